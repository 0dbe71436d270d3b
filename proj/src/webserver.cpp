#include "seclink/demos/webserver.hpp"

#include <algorithm>
#include <stdexcept>

#include "seclink/demos/http.hpp"

namespace seclink::web {

namespace {

bool contains(const std::vector<Fd>& v, Fd fd) { return std::find(v.begin(), v.end(), fd) != v.end(); }

template <class T>
Either<Unit> to_unit(const Either<T>& r) {
  return r.is_inl() ? Either<Unit>::inl(Unit{}) : Either<Unit>::inr(r.right());
}

}  // namespace

Type handler_type() { return Boundary<Handler>::desc(); }

ArrowSpec handler_spec() {
  ArrowSpec s;
  s.pre = [](const DynValue&, const Trace& h) { return did_not_respond(h); };
  s.post = [](const DynValue& x, const Trace& h, const DynValue& r, const Trace& lt) {
    Fd client = x.first().as_fd();
    return (wrote_to(client, lt) || r.is_inr()) && enforced_locally(webserver_sigma(), h, lt);
  };
  return s;
}

ArrowSpec send_spec() {
  ArrowSpec s;
  s.pre = [](const DynValue& x, const Trace& h) {
    return did_not_respond(h) && http::valid_http_response(x.as_bytes());
  };
  s.post = [](const DynValue& x, const Trace&, const DynValue&, const Trace& lt) {
    return lt.size() == 1 && lt[0].caller == Caller::Prog && lt[0].op == IoOp::Write &&
           std::get<WriteArgs>(lt[0].args).data == x.as_bytes();
  };
  return s;
}

Check<WebState> handler_check() {
  return [](const DynValue& x, const WebState& s0, const DynValue& r, const WebState& s1) {
    Fd client = x.first().as_fd();
    return r.is_inr() || (!contains(s0.written, client) && contains(s1.written, client));
  };
}

Check<WebState> send_check() {
  return [](const DynValue& res, const WebState& s0, const DynValue&, const WebState&) {
    return !s0.responded && http::valid_http_response(res.as_bytes());
  };
}

namespace {

CheckTree<WebState> cks_with(Check<WebState> handler_ck) {
  using L = WebState;
  auto send = check_node<L>("send", send_check(), leaf<L>(), leaf<L>(), send_spec());
  auto arg = empty_node<L>(leaf<L>(), empty_node<L>(leaf<L>(), send));
  return check_node<L>("handler", std::move(handler_ck), arg, leaf<L>(), handler_spec());
}

}  // namespace

CheckTree<WebState> handler_cks() { return cks_with(handler_check()); }

CheckTree<WebState> weakened_handler_cks() {
  return cks_with([](const DynValue&, const WebState&, const DynValue&, const WebState&) { return true; });
}

PostCond psi() {
  return [](const Trace&, int, const Trace& lt) { return every_request_gets_a_response(lt); };
}

SourceInterface<WebState> interface(Diagnostics diag) {
  return SourceInterface<WebState>{"webserver", handler_type(), webserver_sigma(), webserver_pi(),
                                   handler_cks(), psi(), webserver_mstate(), std::move(diag)};
}

Bundle<WebState> bundle(CheckTree<WebState> cks) {
  return Bundle<WebState>{"webserver", handler_type(), webserver_sigma(), webserver_pi(), std::move(cks),
                          webserver_mstate()};
}

Bytes bad_request_response() { return http::http_response(400, ""); }

namespace {

struct Loop {
  ServerConfig cfg;
  OutcomeLog outcomes;
  Handler handler;
  Fd listener;

  Comp<int> finish(std::vector<Fd> clients, int served) const {
    Comp<int> done = ret(served);
    for (auto it = clients.rbegin(); it != clients.rend(); ++it) done = then(io::close(Caller::Prog, *it), done);
    return then(io::close(Caller::Prog, listener), done);
  }

  Comp<int> respond_and_close(Fd client, Comp<Either<Unit>> respond, std::vector<Fd> clients, int served,
                              int iter) const {
    clients.erase(std::remove(clients.begin(), clients.end(), client), clients.end());
    return then(respond, then(io::close(Caller::Prog, client), step(clients, served + 1, iter + 1)));
  }

  Comp<Either<Unit>> serve(Fd client, const Bytes& req) const {
    Fd c = client;
    SendFn send = [c](const Bytes& res) { return io::write(Caller::Prog, c, res); };
    OutcomeLog log = outcomes;
    return and_then(handler(HandlerArg{client, {req, send}}), [c, log](const Either<Unit>& r) {
      if (log) log->push_back(HandlerOutcome{c, r});
      if (r.is_inl()) return ret(r);
      // A failing handler may already have answered; never answer twice.
      return and_then(get_mstate<WebState>(), [c, r](const WebState& s) -> Comp<Either<Unit>> {
        if (std::find(s.written.begin(), s.written.end(), c) != s.written.end()) return ret(r);
        return io::write(Caller::Prog, c, bad_request_response());
      });
    });
  }

  Comp<int> step(std::vector<Fd> clients, int served, int iter) const {
    if (iter >= cfg.max_iterations) return finish(clients, served);
    Loop self = *this;
    std::vector<Fd> watch{listener};
    watch.insert(watch.end(), clients.begin(), clients.end());
    return and_then(io::select(Caller::Prog, watch), [self, clients, served, iter](const Either<Fd>& ready) {
      if (ready.is_inr()) return self.finish(clients, served);
      Fd fd = ready.left();
      if (fd == self.listener) {
        return and_then(io::accept(Caller::Prog, self.listener), [self, clients, served, iter](const Either<Fd>& c) {
          if (c.is_inr()) return self.step(clients, served, iter + 1);
          std::vector<Fd> more = clients;
          more.push_back(c.left());
          return then(io::set_nonblock(Caller::Prog, c.left()), self.step(more, served, iter + 1));
        });
      }
      return and_then(io::read(Caller::Prog, fd), [self, fd, clients, served, iter](const Either<Bytes>& req) {
        if (req.is_inr()) {
          std::vector<Fd> rest = clients;
          rest.erase(std::remove(rest.begin(), rest.end(), fd), rest.end());
          return then(io::close(Caller::Prog, fd), self.step(rest, served, iter + 1));
        }
        Comp<Either<Unit>> respond = http::valid_http_request(req.left())
                                         ? self.serve(fd, req.left())
                                         : io::write(Caller::Prog, fd, bad_request_response());
        return self.respond_and_close(fd, respond, clients, served, iter);
      });
    });
  }
};

Comp<Either<Fd>> setup(int port) {
  return and_then(io::socket(Caller::Prog), [port](const Either<Fd>& s) -> Comp<Either<Fd>> {
    if (s.is_inr()) return ret(s);
    Fd fd = s.left();
    return then(io::setsockopt(Caller::Prog, fd, "SO_REUSEADDR", true),
                then(io::bind_addr(Caller::Prog, fd, "0.0.0.0", port),
                     then(io::listen(Caller::Prog, fd, 5),
                          then(io::set_nonblock(Caller::Prog, fd), ret(Either<Fd>::inl(fd))))));
  });
}

}  // namespace

SourceProg web_server(ServerConfig cfg, OutcomeLog outcomes) {
  return [cfg, outcomes](const DynValue& ctx) {
    Handler handler = from_dyn<Handler>(ctx);
    return and_then(setup(cfg.port), [cfg, outcomes, handler](const Either<Fd>& l) -> Comp<int> {
      if (l.is_inr()) return ret(0);
      Loop loop{cfg, outcomes, handler, l.left()};
      return loop.step({}, 0, 0);
    });
  };
}

namespace {

Handler make_handler(std::function<Comp<Either<Unit>>(const HandlerArg&)> f) { return f; }

TargetCtx as_ctx(std::function<Handler(const SecureIoLib&)> build) {
  return [build](const SecureIoLib& lib) { return to_dyn<Handler>(build(lib)); };
}

}  // namespace

TargetCtx adversarial_handler(int k) {
  switch (k) {
    case 1:
      // Returns success without answering.
      return as_ctx([](const SecureIoLib&) {
        return make_handler([](const HandlerArg&) { return ret(Either<Unit>::inl(Unit{})); });
      });
    case 2:
      // Answers with something that is not an HTTP response.
      return as_ctx([](const SecureIoLib&) {
        return make_handler([](const HandlerArg& a) { return a.second.second("hello"); });
      });
    case 3:
      // Reads outside the served folder.
      return as_ctx([](const SecureIoLib& lib) {
        return make_handler([lib](const HandlerArg&) {
          return fmap(lib.openfile("/etc/passwd", kReadWrite, 0x650), [](const Either<Fd>& r) { return to_unit(r); });
        });
      });
    case 4:
      // Writes to the client directly, bypassing send.
      return as_ctx([](const SecureIoLib& lib) {
        return make_handler([lib](const HandlerArg& a) { return lib.write(a.first, "hello"); });
      });
    case 5:
      // Opens a socket.
      return as_ctx([](const SecureIoLib& lib) {
        return make_handler([lib](const HandlerArg&) {
          return fmap(lib.socket(), [](const Either<Fd>& r) { return to_unit(r); });
        });
      });
    default: throw std::invalid_argument("no adversarial handler " + std::to_string(k));
  }
}

TargetCtx benign_handler() {
  return as_ctx([](const SecureIoLib& lib) {
    return make_handler([lib](const HandlerArg& a) {
      SendFn send = a.second.second;
      std::string path = "/temp" + http::request_path(a.second.first);
      return and_then(lib.openfile(path), [lib, send](const Either<Fd>& f) -> Comp<Either<Unit>> {
        if (f.is_inr()) return send(http::http_response(404, "not found"));
        Fd fd = f.left();
        return and_then(lib.read(fd), [lib, send, fd](const Either<Bytes>& body) {
          if (body.is_inr()) return then(lib.close(fd), send(http::http_response(500, "error")));
          return then(lib.close(fd), send(http::http_response(200, body.left())));
        });
      });
    });
  });
}

std::vector<std::pair<std::string, TargetCtx>> handlers() {
  return {{"adv1", adversarial_handler(1)}, {"adv2", adversarial_handler(2)}, {"adv3", adversarial_handler(3)},
          {"adv4", adversarial_handler(4)}, {"adv5", adversarial_handler(5)}, {"benign", benign_handler()}};
}

}  // namespace seclink::web
