#include "seclink/demos/tmp_plugin.hpp"

namespace seclink::tmp_plugin {

namespace {

bool allowed(IoOp op, const IoArgs& arg) {
  switch (op) {
    case IoOp::Openfile: {
      const auto* a = std::get_if<OpenfileArgs>(&arg);
      return a && in_folder(a->path, "/tmp");
    }
    case IoOp::Read:
    case IoOp::Close: {
      const Fd* fd = std::get_if<Fd>(&arg);
      return fd && fd->value >= 3;
    }
    case IoOp::Write: {
      const auto* w = std::get_if<WriteArgs>(&arg);
      return w && w->fd.value >= 3;
    }
    default: return false;
  }
}

}  // namespace

Type plugin_type() { return Boundary<Plugin>::desc(); }

PolicySpec sigma() {
  return [](const Trace&, Caller c, IoOp op, const IoArgs& arg) { return c == Caller::Prog || allowed(op, arg); };
}

Policy<Unit> pi() {
  return {"allow_all_in_tmp", [](const Unit&, IoOp op, const IoArgs& arg) { return allowed(op, arg); }};
}

ArrowSpec plugin_spec() {
  ArrowSpec s;
  s.pre = [](const DynValue&, const Trace&) { return true; };
  s.post = [](const DynValue&, const Trace& h, const DynValue& r, const Trace& lt) {
    return enforced_locally(sigma(), h, lt) && (r.is_inr() || r.payload().as_int() >= 0);
  };
  return s;
}

Check<Unit> plugin_check() {
  return [](const DynValue&, const Unit&, const DynValue& r, const Unit&) {
    return r.is_inr() || r.payload().as_int() >= 0;
  };
}

CheckTree<Unit> plugin_cks() {
  return check_node<Unit>("plugin", plugin_check(), leaf<Unit>(), leaf<Unit>(), plugin_spec());
}

PostCond psi() {
  return [](const Trace& h, int result, const Trace& lt) {
    return enforced_locally(sigma(), h, lt) && (result >= 0 || result == -3 || result == kRejectedContext);
  };
}

SourceInterface<Unit> interface(Diagnostics diag) {
  return SourceInterface<Unit>{"tmp_plugin", plugin_type(), sigma(), pi(), plugin_cks(), psi(), stateless_mstate(),
                               std::move(diag)};
}

Bundle<Unit> bundle() {
  return Bundle<Unit>{"tmp_plugin", plugin_type(), sigma(), pi(), plugin_cks(), stateless_mstate()};
}

SourceProg program() {
  return [](const DynValue& ctx) {
    Plugin plugin = from_dyn<Plugin>(ctx);
    return and_then(plugin(Unit{}), [](const Either<std::int64_t>& r) -> Comp<int> {
      if (r.is_inr()) return then(io::write(Caller::Prog, Fd{1}, "plugin failed\n"), ret(-3));
      int n = static_cast<int>(r.left());
      return then(io::write(Caller::Prog, Fd{1}, std::to_string(n) + "\n"), ret(n));
    });
  };
}

}  // namespace seclink::tmp_plugin
