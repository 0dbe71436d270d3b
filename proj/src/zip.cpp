#include "seclink/demos/zip.hpp"

namespace seclink::zip {

namespace {

bool prog_fd_arg(const Trace& h, const IoArgs& arg) {
  if (const Fd* fd = std::get_if<Fd>(&arg)) return is_opened_by_Prog(*fd, h);
  if (const auto* w = std::get_if<WriteArgs>(&arg)) return is_opened_by_Prog(w->fd, h);
  return false;
}

Check<Trace> always() {
  return [](const DynValue&, const Trace&, const DynValue&, const Trace&) { return true; };
}

ArrowSpec confined(std::function<bool(const DynValue&, const Trace&)> pre) {
  ArrowSpec s;
  s.pre = std::move(pre);
  s.post = [](const DynValue&, const Trace& h, const DynValue&, const Trace& lt) {
    return enforced_locally(sigma(), h, lt);
  };
  return s;
}

}  // namespace

Type zip_type() { return Boundary<Zip>::desc(); }

PolicySpec sigma() {
  return [](const Trace& h, Caller c, IoOp op, const IoArgs& arg) {
    if (c == Caller::Prog) return true;
    return (op == IoOp::Read || op == IoOp::Write) && prog_fd_arg(h, arg);
  };
}

Policy<Trace> pi() {
  return {"zip", [](const Trace& s, IoOp op, const IoArgs& arg) {
            return (op == IoOp::Read || op == IoOp::Write) && prog_fd_arg(s, arg);
          }};
}

ArrowSpec zip_spec() {
  return confined([](const DynValue& afd, const Trace& h) { return is_opened_by_Prog(afd.as_fd(), h); });
}

ArrowSpec zip_file_spec() {
  return confined([](const DynValue& fd, const Trace& h) { return is_opened_by_Prog(fd.as_fd(), h); });
}

Check<Trace> zip_file_check() {
  return [](const DynValue& fd, const Trace& s0, const DynValue&, const Trace&) {
    return is_opened_by_Prog(fd.as_fd(), s0);
  };
}

CheckTree<Trace> zip_cks() {
  using L = Trace;
  auto zip_file = check_node<L>("zip_file", zip_file_check(), leaf<L>(), leaf<L>(), zip_file_spec());
  return check_node<L>("zip", always(), leaf<L>(), zip_file, zip_spec());
}

PostCond psi() {
  return [](const Trace& h, int, const Trace& lt) { return enforced_locally(sigma(), h, lt); };
}

SourceInterface<Trace> interface(Diagnostics diag) {
  return SourceInterface<Trace>{"zip", zip_type(), sigma(), pi(), zip_cks(), psi(), full_trace_mstate(),
                                std::move(diag)};
}

Bundle<Trace> bundle() { return Bundle<Trace>{"zip", zip_type(), sigma(), pi(), zip_cks(), full_trace_mstate()}; }

namespace {

Comp<int> archive(ZipFile add, Fd a, Fd b, bool close_b_first) {
  Comp<Either<Unit>> second = close_b_first ? then(io::close(Caller::Prog, b), add(b)) : add(b);
  return and_then(add(a), [second](const Either<Unit>& ra) {
    return fmap(second, [ra](const Either<Unit>& rb) { return int(ra.is_inl()) + int(rb.is_inl()); });
  });
}

Comp<Unit> close_all(const std::vector<Fd>& fds) {
  Comp<Unit> c = ret(Unit{});
  for (auto it = fds.rbegin(); it != fds.rend(); ++it) c = then(io::close(Caller::Prog, *it), c);
  return c;
}

}  // namespace

SourceProg program(ProgramConfig cfg) {
  return [cfg](const DynValue& ctx) -> Comp<int> {
    Zip zip = from_dyn<Zip>(ctx);
    return and_then(io::openfile(Caller::Prog, kArchive, kWriteOnly | kCreate, 0644), [=](const Either<Fd>& afd) {
      if (afd.is_inr()) return ret(-2);
      return and_then(io::openfile(Caller::Prog, kInputs[0]), [=](const Either<Fd>& fa) {
        return and_then(io::openfile(Caller::Prog, kInputs[1]), [=](const Either<Fd>& fb) -> Comp<int> {
          std::vector<Fd> opened{afd.left()};
          if (fa.is_inl()) opened.push_back(fa.left());
          if (fb.is_inl() && !cfg.pass_closed_fd) opened.push_back(fb.left());
          if (fa.is_inr() || fb.is_inr()) return then(close_all(opened), ret(0));
          return and_then(zip(afd.left()), [=](const Either<ZipFile>& zf) -> Comp<int> {
            if (zf.is_inr()) return then(close_all(opened), ret(-2));
            return and_then(archive(zf.left(), fa.left(), fb.left(), cfg.pass_closed_fd),
                            [opened](int n) { return then(close_all(opened), ret(n)); });
          });
        });
      });
    });
  };
}

TargetCtx benign_zip() {
  return [](const SecureIoLib& lib) {
    Zip z = [lib](const Fd& afd) {
      ZipFile add = [lib, afd](const Fd& in) {
        return and_then(lib.read(in), [lib, afd](const Either<Bytes>& data) -> Comp<Either<Unit>> {
          if (data.is_inr()) return ret(Either<Unit>::inr(data.right()));
          return lib.write(afd, "entry:" + data.left() + "\n");
        });
      };
      return fmap(lib.write(afd, "ZIP\n"), [add](const Either<Unit>& r) {
        return r.is_inl() ? Either<ZipFile>::inl(add) : Either<ZipFile>::inr(r.right());
      });
    };
    return to_dyn<Zip>(z);
  };
}

}  // namespace seclink::zip
