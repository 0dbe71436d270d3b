#include <doctest.h>

#include <random>

#include "seclink/interpreter.hpp"
#include "seclink/monitor.hpp"
#include "seclink/traces.hpp"

using namespace seclink;

namespace {

World sample_world(int k) {
  World w;
  w.add_file("/temp/x", "xx");
  w.add_file("/temp/a", "content " + std::to_string(k));
  if (k % 2 == 0) w.add_file("/temp/b", "bbb");
  return w;
}

AnyMState web() { return erase(webserver_mstate()); }

Comp<Either<Fd>> open_then_close() {
  return and_then(io::openfile(Caller::Prog, "/temp/a"), [](const Either<Fd>& r) {
    if (r.is_inr()) return ret(r);
    Fd fd = r.left();
    return fmap(io::close(Caller::Prog, fd), [fd](const Either<Unit>&) { return Either<Fd>::inl(fd); });
  });
}

}  // namespace

TEST_CASE("ret interprets to its value with an empty trace") {
  World w = sample_world(0);
  auto r = interpret(ret(5), w, web());
  CHECK(r.result == 5);
  CHECK(r.local.empty());
  CHECK(r.history.empty());
  CHECK(r.world == w);
  auto u = interpret(ret(Unit{}), w, web());
  CHECK(u.local.empty());
}

TEST_CASE("monad laws hold up to trace and result") {
  auto f = [](const int& x) {
    return fmap(io::openfile(Caller::Prog, x == 3 ? "/temp/a" : "/temp/b"),
                [](const Either<Fd>& r) { return r.is_inl() ? r.left().value : -1; });
  };
  auto g = [](const int& fd) {
    return fmap(io::read(Caller::Prog, Fd{fd}), [](const Either<Bytes>& r) { return r.is_inl() ? 1 : 0; });
  };
  auto m = fmap(open_then_close(), [](const Either<Fd>& r) { return r.is_inl() ? 3 : 4; });
  for (int k = 0; k < 4; ++k) {
    World w = sample_world(k);
    auto lhs = interpret(and_then(ret(3), f), w, web());
    auto rhs = interpret(f(3), w, web());
    CHECK(lhs.local == rhs.local);
    CHECK(lhs.result == rhs.result);

    auto ri = interpret(and_then(m, [](const int& x) { return ret(x); }), w, web());
    auto mo = interpret(m, w, web());
    CHECK(ri.local == mo.local);
    CHECK(ri.result == mo.result);

    auto a1 = interpret(and_then(and_then(m, f), g), w, web());
    auto a2 = interpret(and_then(m, [&](const int& x) { return and_then(f(x), g); }), w, web());
    CHECK(a1.local == a2.local);
    CHECK(a1.result == a2.result);
  }
}

TEST_CASE("a single openfile records one event") {
  auto r = interpret(and_then(call_io(Caller::Prog, IoOp::Openfile, OpenfileArgs{"/temp/a", 0, 0}),
                          [](const IoResult& x) { return ret(x); }),
                     sample_world(0), web());
  REQUIRE(r.local.size() == 1);
  CHECK(r.local[0] == ev_openfile(Caller::Prog, "/temp/a", ok_fd(Fd{3})));
  CHECK(r.result == ok_fd(Fd{3}));
}

TEST_CASE("failures are recorded in band") {
  auto r = interpret(call_io(Caller::Ctx, IoOp::Read, Fd{42}), sample_world(0), web());
  REQUIRE(r.local.size() == 1);
  CHECK(r.result.is_inr());
  CHECK(r.result.right().code == Errc::bad_fd);
  CHECK(r.local[0] == ev_read(Caller::Ctx, Fd{42}, io_error(Errc::bad_fd)));

  auto c = and_then(io::openfile(Caller::Prog, "/temp/x", kReadWrite), [](const Either<Fd>& fd) {
    return then(io::close(Caller::Prog, fd.left()), io::write(Caller::Prog, fd.left(), "b"));
  });
  auto r2 = interpret(c, sample_world(0), web());
  CHECK(r2.result.is_inr());
  CHECK(r2.result.right().code == Errc::bad_fd);
  CHECK(r2.local.size() == 3);

  auto r3 = interpret(io::openfile(Caller::Prog, "/nope"), sample_world(0), web());
  CHECK(r3.result.right().code == Errc::no_entry);
}

TEST_CASE("get_mstate reads without recording") {
  auto fresh = interpret(get_mstate<WebState>(), sample_world(0), web());
  CHECK(fresh.result == WebState{});
  CHECK(fresh.local.empty());

  auto c = then(call_io(Caller::Ctx, IoOp::Openfile, OpenfileArgs{"/temp/a", 0, 0}), get_mstate<WebState>());
  auto after = interpret(c, sample_world(0), web());
  CHECK(after.result.ctx_opened == std::vector<Fd>{Fd{3}});

  auto twice = and_then(get_mstate<WebState>(), [](const WebState& a) {
    return fmap(get_mstate<WebState>(), [a](const WebState& b) { return a == b; });
  });
  auto t = interpret(twice, sample_world(0), web());
  CHECK(t.result);
  CHECK(t.local.empty());
}

TEST_CASE("open then close yields a chronological local trace") {
  auto r = interpret(open_then_close(), sample_world(1), web());
  REQUIRE(r.local.size() == 2);
  CHECK(r.local[0].op == IoOp::Openfile);
  CHECK(r.local[1].op == IoOp::Close);
  Trace rev(r.local.rbegin(), r.local.rend());
  CHECK(r.history == rev);
}

TEST_CASE("interpretation is deterministic and splits compose") {
  auto c = and_then(open_then_close(), [](const Either<Fd>&) { return io::openfile(Caller::Prog, "/temp/x"); });
  auto a = interpret(c, sample_world(2), web());
  auto b = interpret(c, sample_world(2), web());
  CHECK(a.local == b.local);
  CHECK(a.world == b.world);

  auto first = interpret(open_then_close(), sample_world(2), web());
  auto second = interpret(io::openfile(Caller::Prog, "/temp/x"), first.world, web(), first.history,
                          first.mstate);
  CHECK(second.history == extend_history(first.history, second.local));
  CHECK(second.history == a.history);
}

TEST_CASE("world select picks the lowest ready descriptor") {
  World w;
  w.add_connection(1, "GET / HTTP/1.1\r\n\r\n");
  w.add_connection(2, "GET /a HTTP/1.1\r\n\r\n");
  auto c = and_then(io::socket(Caller::Prog), [](const Either<Fd>& s) {
    Fd l = s.left();
    return then(io::listen(Caller::Prog, l, 5),
                and_then(io::accept(Caller::Prog, l), [l](const Either<Fd>& c1) {
                  return and_then(io::accept(Caller::Prog, l), [l, c1](const Either<Fd>& c2) {
                    return then(io::read(Caller::Prog, c1.left()),
                                and_then(io::select(Caller::Prog, {l, c1.left(), c2.left()}), [](const Either<Fd>& r) {
                                  return ret(r);
                                }));
                  });
                }));
  });
  auto r = interpret(c, w, web());
  REQUIRE(r.result.is_inl());
  CHECK(r.result.left() == Fd{5});
}
