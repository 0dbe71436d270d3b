#include "seclink/gen.hpp"

namespace seclink {

namespace {

void collect(const DynValue& v, Hints& out) {
  if (v.is_fd()) out.fds.push_back(v.as_fd());
  if (v.is_bytes()) out.bytes.push_back(v.as_bytes());
  if (v.is_pair()) {
    collect(v.first(), out);
    collect(v.second(), out);
  }
  if (v.is_either()) collect(v.payload(), out);
}

const Errc kErrors[] = {Errc::no_entry, Errc::bad_fd, Errc::would_block, Errc::not_socket, Errc::invalid,
                        Errc::contract_failure};

}  // namespace

Hints hints_of(const DynValue& v) {
  Hints h;
  collect(v, h);
  return h;
}

TraceGen::TraceGen(std::uint64_t seed, Vocabulary v) : rng_(seed), vocab_(std::move(v)) {}

int TraceGen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool TraceGen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Fd TraceGen::fd(const Hints& h) {
  if (!h.fds.empty() && coin(0.6)) return h.fds[uniform(0, static_cast<int>(h.fds.size()) - 1)];
  return Fd{uniform(0, vocab_.max_fd)};
}

Bytes TraceGen::bytes(const Hints& h) {
  if (!h.bytes.empty() && coin(0.5)) return h.bytes[uniform(0, static_cast<int>(h.bytes.size()) - 1)];
  return vocab_.payloads[uniform(0, static_cast<int>(vocab_.payloads.size()) - 1)];
}

IoOp TraceGen::op() { return vocab_.ops[uniform(0, static_cast<int>(vocab_.ops.size()) - 1)]; }

IoArgs TraceGen::args(IoOp op, const Hints& h) {
  switch (op) {
    case IoOp::Openfile: {
      const auto& p = vocab_.paths;
      int flags = coin() ? kReadOnly : (coin() ? kReadWrite : kWriteOnly | kCreate);
      return OpenfileArgs{p[uniform(0, static_cast<int>(p.size()) - 1)], flags, coin() ? 0 : 0644};
    }
    case IoOp::Write: return WriteArgs{fd(h), bytes(h)};
    case IoOp::Socket: return Unit{};
    case IoOp::Setsockopt: return SetsockoptArgs{fd(h), "SO_REUSEADDR", coin()};
    case IoOp::Bind: return BindArgs{fd(h), "0.0.0.0", 3000};
    case IoOp::Listen: return ListenArgs{fd(h), 5};
    case IoOp::Select: {
      SelectArgs s;
      int n = uniform(1, 3);
      for (int i = 0; i < n; ++i) s.fds.push_back(fd(h));
      return s;
    }
    default: return fd(h);
  }
}

IoResult TraceGen::result(IoOp op, const Hints& h) {
  if (coin(0.25)) return IoResult::inr(Err{kErrors[uniform(0, 4)], {}});
  switch (op) {
    case IoOp::Openfile:
    case IoOp::Socket:
    case IoOp::Accept:
    case IoOp::Select: return IoResult::inl(fd(h));
    case IoOp::Read: return IoResult::inl(bytes(h));
    default: return IoResult::inl(Unit{});
  }
}

Event TraceGen::event(const Hints& h) { return event(coin() ? Caller::Prog : Caller::Ctx, h); }

Event TraceGen::event(Caller c, const Hints& h) {
  IoOp o = op();
  IoArgs a = args(o, h);
  return Event{c, o, std::move(a), result(o, h)};
}

Trace TraceGen::history(int max_len, const Hints& h) {
  Trace t;
  int n = uniform(0, max_len);
  for (int i = 0; i < n; ++i) t.push_back(event(h));
  return t;
}

Trace TraceGen::local(const PolicySpec& sigma, const Trace& h, int max_len, const Hints& hints, double bias) {
  Trace lt;
  if (coin(0.2)) return lt;
  int n = uniform(1, max_len);
  Trace cur = h;
  for (int i = 0; i < n; ++i) {
    Event e = event(hints);
    if (coin(bias)) {
      for (int tries = 0; tries < 32 && !sigma(cur, e.caller, e.op, e.args); ++tries) e = event(hints);
    }
    lt.push_back(e);
    cur.insert(cur.begin(), e);
  }
  return lt;
}

DynValue TraceGen::value(const Type& t, const Hints& h) {
  switch (t->kind) {
    case TypeDesc::Kind::Unit: return dyn_unit();
    case TypeDesc::Kind::Int: return dyn_int(uniform(-2, 10));
    case TypeDesc::Kind::Bytes: return dyn_bytes(bytes(h));
    case TypeDesc::Kind::FileDescr: return dyn_fd(fd(h));
    case TypeDesc::Kind::Err: return dyn_err(Err{kErrors[uniform(0, 5)], {}});
    case TypeDesc::Kind::Pair: {
      DynValue a = value(t->a, h);
      return dyn_pair(a, value(t->b, h));
    }
    case TypeDesc::Kind::Either: return coin() ? dyn_inl(value(t->a, h)) : dyn_inr(value(t->b, h));
    case TypeDesc::Kind::Arrow: {
      DynValue r = dyn_ok(value(t->b, h));
      return dyn_closure([r](const DynValue&) { return ret(r); });
    }
  }
  return dyn_unit();
}

DynValue TraceGen::result_of(const Type& cod, const Hints& h) {
  int k = uniform(0, 3);
  if (k == 0) return dyn_fail(Err::contract_failure("generated"));
  if (k == 1) return dyn_fail(Err{kErrors[uniform(0, 4)], {}});
  return dyn_ok(value(cod, h));
}

}  // namespace seclink
