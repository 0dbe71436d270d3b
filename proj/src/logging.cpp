#include "seclink/demos/logging.hpp"

namespace seclink::logging {

namespace {

bool is_log_of(const Event& e, IoOp op) {
  const auto* w = std::get_if<WriteArgs>(&e.args);
  return e.caller == Caller::Prog && e.op == IoOp::Write && w && w->fd == kStdout && w->data == op_name(op) &&
         e.result == ok_unit();
}

}  // namespace

Type logger_type() { return t_arrow(t_bytes(), t_unit()); }

PolicySpec sigma() {
  return [](const Trace& h, Caller c, IoOp op, const IoArgs&) {
    if (c == Caller::Ctx) return !h.empty() && is_log_of(h.front(), op);
    if (op == IoOp::Write) return h.empty() || h.front().caller == Caller::Ctx;
    return false;
  };
}

Policy<LastEvent> pi() {
  return {"logging", [](const LastEvent& s, IoOp op, const IoArgs&) { return s && is_log_of(*s, op); }};
}

ArrowSpec logger_spec() {
  ArrowSpec s;
  s.pre = [](const DynValue&, const Trace& h) { return h.empty() || h.front().caller == Caller::Ctx; };
  s.post = [](const DynValue& x, const Trace&, const DynValue&, const Trace& lt) {
    if (lt.size() != 1) return false;
    const auto* w = std::get_if<WriteArgs>(&lt[0].args);
    return lt[0].caller == Caller::Prog && lt[0].op == IoOp::Write && w && w->fd == kStdout &&
           w->data == x.as_bytes();
  };
  return s;
}

Check<LastEvent> logger_check() {
  return [](const DynValue&, const LastEvent& s0, const DynValue&, const LastEvent&) {
    return !s0 || s0->caller == Caller::Ctx;
  };
}

CheckTree<LastEvent> logger_cks() {
  using L = LastEvent;
  return check_node<L>("log", logger_check(), leaf<L>(), leaf<L>(), logger_spec());
}

DualSourceProg logger() {
  return to_dyn<Fn<Bytes, Unit>>([](const Bytes& line) { return io::write(Caller::Prog, kStdout, line); });
}

DualInterface<LastEvent> interface(Diagnostics diag) {
  return DualInterface<LastEvent>{"logging", logger_type(), sigma(), pi(), logger_cks(), last_event_mstate(),
                                  std::move(diag)};
}

Bundle<LastEvent> bundle() {
  return Bundle<LastEvent>{"logging", logger_type(), sigma(), pi(), logger_cks(), last_event_mstate(), true};
}

TraceProperty guarantee() {
  return [](const Trace& lt, int) { return enforced_locally(sigma(), {}, lt); };
}

}  // namespace seclink::logging
