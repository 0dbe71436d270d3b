#include "seclink/monitor.hpp"

#include <algorithm>
#include <set>

namespace seclink {

Comp<IoResult> SecureIoLib::secure_call(IoOp op, IoArgs args) const {
  return and_then(get_mstate_any(), [decide = decide_, log = log_, op, args](const std::any& s) {
    if (decide(s, op, args)) return call_io_mediated(MonitorKey{}, op, args);
    if (log) log->push_back(Denial{op, args});
    return ret(IoResult::inr(Err::contract_failure("monitor")));
  });
}

Comp<Either<Fd>> SecureIoLib::openfile(std::string path, int flags, int mode) const {
  return io::narrow<Fd>(secure_call(IoOp::Openfile, OpenfileArgs{std::move(path), flags, mode}));
}
Comp<Either<Bytes>> SecureIoLib::read(Fd fd) const { return io::narrow<Bytes>(secure_call(IoOp::Read, fd)); }
Comp<Either<Unit>> SecureIoLib::write(Fd fd, Bytes data) const {
  return io::narrow<Unit>(secure_call(IoOp::Write, WriteArgs{fd, std::move(data)}));
}
Comp<Either<Unit>> SecureIoLib::close(Fd fd) const { return io::narrow<Unit>(secure_call(IoOp::Close, fd)); }
Comp<Either<Fd>> SecureIoLib::socket() const { return io::narrow<Fd>(secure_call(IoOp::Socket, Unit{})); }

namespace {

bool contains(const std::vector<Fd>& v, Fd fd) { return std::find(v.begin(), v.end(), fd) != v.end(); }

void add(std::vector<Fd>& v, Fd fd) {
  if (!contains(v, fd)) v.push_back(fd);
}

void remove(std::vector<Fd>& v, Fd fd) { v.erase(std::remove(v.begin(), v.end(), fd), v.end()); }

// Every descriptor mentioned by the state or the history; membership
// clauses only need checking on these.
std::set<int> mentioned(const WebState& s, const Trace& h) {
  std::set<int> out;
  for (Fd fd : s.ctx_opened) out.insert(fd.value);
  for (Fd fd : s.written) out.insert(fd.value);
  for (const Event& e : h) {
    if (auto fd = target_fd(e.args)) out.insert(fd->value);
    if (e.succeeded()) {
      if (const Fd* r = std::get_if<Fd>(&e.result.left())) out.insert(r->value);
    }
  }
  return out;
}

}  // namespace

MStateDesc<WebState> webserver_mstate() {
  MStateDesc<WebState> d;
  d.name = "webserver";
  d.init = WebState{};
  d.abstracts = [](const WebState& s, const Trace& h) {
    if (s.responded != !did_not_respond(h)) return false;
    for (int v : mentioned(s, h)) {
      Fd fd{v};
      if (contains(s.ctx_opened, fd) != is_opened_by_Ctx(fd, h)) return false;
      if (contains(s.written, fd) != wrote_to(fd, h)) return false;
    }
    return true;
  };
  d.upd = [](const WebState& s0, const Event& e) {
    WebState s = s0;
    if (e.succeeded()) {
      if (const Fd* r = std::get_if<Fd>(&e.result.left());
          r != nullptr && (e.op == IoOp::Openfile || e.op == IoOp::Socket || e.op == IoOp::Accept)) {
        if (e.op == IoOp::Openfile && e.caller == Caller::Ctx) {
          add(s.ctx_opened, *r);
        } else {
          remove(s.ctx_opened, *r);
        }
      }
      if (e.op == IoOp::Close) remove(s.ctx_opened, std::get<Fd>(e.args));
      if (e.op == IoOp::Read) s.responded = false;
    }
    if (e.op == IoOp::Write) {
      if (e.caller == Caller::Prog) s.responded = true;
      add(s.written, std::get<WriteArgs>(e.args).fd);
    }
    return s;
  };
  return d;
}

MStateDesc<Trace> full_trace_mstate() {
  MStateDesc<Trace> d;
  d.name = "full-trace";
  d.init = Trace{};
  d.abstracts = [](const Trace& s, const Trace& h) { return s == h; };
  d.upd = [](const Trace& s, const Event& e) { return cons_history(e, s); };
  return d;
}

MStateDesc<std::optional<Event>> last_event_mstate() {
  MStateDesc<std::optional<Event>> d;
  d.name = "last-event";
  d.init = std::nullopt;
  d.abstracts = [](const std::optional<Event>& s, const Trace& h) {
    return h.empty() ? !s.has_value() : (s.has_value() && *s == h.front());
  };
  d.upd = [](const std::optional<Event>&, const Event& e) { return std::optional<Event>(e); };
  return d;
}

MStateDesc<Unit> stateless_mstate() {
  MStateDesc<Unit> d;
  d.name = "stateless";
  d.init = Unit{};
  d.abstracts = [](const Unit&, const Trace&) { return true; };
  d.upd = [](const Unit& s, const Event&) { return s; };
  return d;
}

PolicySpec webserver_sigma() {
  return [](const Trace& h, Caller c, IoOp op, const IoArgs& arg) {
    if (c == Caller::Prog) return op == IoOp::Write;
    switch (op) {
      case IoOp::Openfile: {
        const auto* a = std::get_if<OpenfileArgs>(&arg);
        return a != nullptr && in_folder(a->path, "/temp");
      }
      case IoOp::Read:
      case IoOp::Close: {
        const Fd* fd = std::get_if<Fd>(&arg);
        return fd != nullptr && is_opened_by_Ctx(*fd, h);
      }
      default: return false;
    }
  };
}

Policy<WebState> webserver_pi() {
  return Policy<WebState>{"webserver", [](const WebState& s, IoOp op, const IoArgs& arg) {
                            switch (op) {
                              case IoOp::Openfile: {
                                const auto* a = std::get_if<OpenfileArgs>(&arg);
                                return a != nullptr && in_folder(a->path, "/temp");
                              }
                              case IoOp::Read:
                              case IoOp::Close: {
                                const Fd* fd = std::get_if<Fd>(&arg);
                                return fd != nullptr && contains(s.ctx_opened, *fd);
                              }
                              default: return false;
                            }
                          }};
}

}  // namespace seclink
