#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "seclink/demos/http.hpp"
#include "seclink/demos/webserver.hpp"
#include "seclink/dsl.hpp"

using namespace seclink;
using namespace seclink::dsl;

namespace {

std::string read_context(const std::string& name) {
  std::ifstream in(std::string(SECLINK_CONTEXT_DIR) + "/" + name + ".ctx");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

World requests() {
  World w;
  w.add_file("/temp/index.html", "<h1>hi</h1>");
  w.add_file("/temp/a/b.txt", "b");
  w.add_connection(1, "GET /index.html HTTP/1.1\r\n\r\n");
  w.add_connection(2, "GET /nope HTTP/1.1\r\n\r\n");
  w.add_connection(3, "GET /a/b.txt?x=1 HTTP/1.0\r\n\r\n");
  w.add_connection(4, "nonsense");
  return w;
}

RunResult<int> serve(const TargetCtx& ctx, World w, web::OutcomeLog log = nullptr) {
  auto I = web::interface();
  auto whole = link_target(compile_interface(I), compile_prog(I, web::web_server({}, log)), ctx);
  return run_whole(whole, std::move(w), I.mstate);
}

TargetCtx compiled(const std::string& name) {
  auto r = compile_context(read_context(name), web::handler_type());
  INFO(r.error.to_string());
  REQUIRE(r.ok());
  return *r.value;
}

}  // namespace

TEST_CASE("types parse with * tighter than ->") {
  auto t = parse_type("fd * bytes -> either unit err");
  REQUIRE(t.ok());
  CHECK(type_equal(*t.value, c_arrow(c_pair(c_fd(), c_bytes()), c_either(c_unit(), c_err()))));
  auto u = parse_type("int -> int -> int");
  REQUIRE(u.ok());
  CHECK(type_equal(*u.value, c_arrow(c_int(), c_arrow(c_int(), c_int()))));
  CHECK_FALSE(parse_type("int ->").ok());
}

TEST_CASE("parser errors carry positions") {
  auto r = parse("\\x:int.\n  (x, ");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error.pos.line == 2);
  CHECK_FALSE(parse("let x = 1 in").ok());
  CHECK_FALSE(parse("\"unterminated").ok());
}

TEST_CASE("string escapes") {
  auto r = parse("\"a\\r\\n\\x41\\\"\"");
  REQUIRE(r.ok());
  CHECK((*r.value)->sval == "a\r\nA\"");
}

TEST_CASE("typechecker accepts and rejects") {
  auto ok = [](const std::string& src, const std::string& ty) {
    auto e = parse(src);
    auto t = parse_type(ty);
    REQUIRE(e.ok());
    REQUIRE(t.ok());
    return typecheck(*e.value, *t.value);
  };
  CHECK(ok("\\x:int. inl x", "int -> either int err").ok());
  CHECK(ok("\\p:int * bytes. (snd p, fst p)", "int * bytes -> bytes * int").ok());
  CHECK(ok("concat \"a\"", "bytes -> bytes").ok());
  CHECK(ok("\\f:fd. io Read f", "fd -> either bytes err").ok());

  auto bad = ok("\\x:int. y", "int -> int");
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error.message.find("unbound variable y") != std::string::npos);
  CHECK(bad.error.message.find("body of \\x") != std::string::npos);

  CHECK_FALSE(ok("\\x:int. x x", "int -> int").ok());
  CHECK_FALSE(ok("\\x:bytes. x", "int -> int").ok());
  CHECK_FALSE(ok("\\f:fd. io Select f", "fd -> either fd err").ok());
  CHECK_FALSE(ok("\\f:fd. io Read 3", "fd -> either bytes err").ok());
  CHECK_FALSE(synthesize(*parse("inl 1").value).ok());
  CHECK(synthesize(*parse("(inl 1 : either int unit)").value).ok());
}

TEST_CASE("values") {
  CHECK(is_value(*parse("\\x:int. io Read x").value));
  CHECK(is_value(*parse("let f = \\x:int. x in (f, 1)").value));
  CHECK_FALSE(is_value(*parse("io Socket ()").value));
  CHECK_FALSE(is_value(*parse("(\\x:int. x) 1").value));
}

TEST_CASE("boundary view uncurries") {
  auto t = *parse_type("fd -> bytes -> (bytes -> either unit err) -> either unit err").value;
  auto b = to_boundary(t);
  REQUIRE(b);
  CHECK(same_type(*b, web::handler_type()));
  auto u = *parse_type("fd * bytes * (bytes -> either unit err) -> either unit err").value;
  CHECK(same_type(*to_boundary(u), web::handler_type()));
  CHECK_FALSE(to_boundary(*parse_type("int -> int").value));
  CHECK(same_type(*to_boundary(from_boundary(web::handler_type())), web::handler_type()));
}

TEST_CASE("compile_context rejects ill-fitting contexts") {
  CHECK_FALSE(compile_context("\\c:fd. inl ()", web::handler_type()).ok());
  CHECK_FALSE(compile_context("io Socket ()", t_unit()).ok());
  CHECK_FALSE(compile_context("\\c:fd. \\r:bytes. \\s:bytes -> either unit err. inl 1", web::handler_type()).ok());
  CHECK(compile_context("\\c:fd. \\r:bytes. \\s:bytes -> either unit err. s r", web::handler_type()).ok());
}

TEST_CASE("DSL handlers produce the same traces as the hand-written ones") {
  for (const auto& [name, native] : web::handlers()) {
    CAPTURE(name);
    auto native_log = std::make_shared<std::vector<web::HandlerOutcome>>();
    auto dsl_log = std::make_shared<std::vector<web::HandlerOutcome>>();
    auto a = serve(native, requests(), native_log);
    auto b = serve(compiled(name), requests(), dsl_log);
    CHECK(a.result == b.result);
    CHECK(a.local == b.local);
    CHECK(a.world == b.world);
    REQUIRE(native_log->size() == dsl_log->size());
    for (std::size_t i = 0; i < native_log->size(); ++i) {
      CHECK((*native_log)[i].client == (*dsl_log)[i].client);
      CHECK((*native_log)[i].result == (*dsl_log)[i].result);
    }
  }
}

TEST_CASE("uncurried benign handler behaves like the curried one") {
  auto a = serve(compiled("benign"), requests());
  auto b = serve(compiled("benign_uncurried"), requests());
  CHECK(a.local == b.local);
  CHECK(a.world.responses().at(3) == http::http_response(200, "b"));
}

TEST_CASE("double send answers once") {
  auto r = serve(compiled("adv_double_send"), requests());
  CHECK(every_request_gets_a_response(r.local));
  CHECK(r.world.responses().at(1) == http::http_response(200, "one"));
}

// Random well-typed terms for round-trip and mutation properties.

namespace {

struct Gen {
  std::mt19937_64 rng;
  int fresh = 0;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  CTypePtr type(int depth) {
    int k = depth <= 0 ? pick(3) : pick(6);
    switch (k) {
      case 0: return c_int();
      case 1: return c_bytes();
      case 2: return c_unit();
      case 3: return c_pair(type(depth - 1), type(depth - 1));
      case 4: return c_either(type(depth - 1), type(depth - 1));
      default: return c_arrow(type(depth - 1), type(depth - 1));
    }
  }

  using Env = std::vector<std::pair<std::string, CTypePtr>>;

  // A term of type t under env, built in checking position.
  ExprPtr term(const CTypePtr& t, const Env& env, int depth) {
    std::vector<std::string> vars;
    for (const auto& [x, xt] : env) {
      if (type_equal(xt, t)) vars.push_back(x);
    }
    if (!vars.empty() && pick(3) == 0) return e_var(vars[pick(static_cast<int>(vars.size()))]);
    if (depth > 0 && pick(4) == 0) {
      CTypePtr bt = type(1);
      std::string x = "v" + std::to_string(fresh++);
      Env inner = env;
      inner.emplace_back(x, bt);
      return e_let(x, e_ann(term(bt, env, depth - 1), bt), term(t, inner, depth - 1));
    }
    switch (t->kind) {
      case CType::Kind::Int: return e_int(pick(200) - 100);
      case CType::Kind::Bytes: return e_bytes(pick(2) ? "s" + std::to_string(pick(9)) : "a\"b\\\n");
      case CType::Kind::Unit: return e_unit();
      case CType::Kind::Pair: return e_pair(term(t->a, env, depth - 1), term(t->b, env, depth - 1));
      case CType::Kind::Either:
        if (depth > 0 && pick(3) == 0) {
          CTypePtr st = c_either(type(0), type(0));
          std::string x = "l" + std::to_string(fresh++);
          std::string y = "r" + std::to_string(fresh++);
          Env l = env;
          l.emplace_back(x, st->a);
          Env r = env;
          r.emplace_back(y, st->b);
          return e_case(e_ann(term(st, env, depth - 1), st), x, term(t, l, depth - 1), y, term(t, r, depth - 1));
        }
        return pick(2) ? e_inl(term(t->a, env, depth - 1)) : e_inr(term(t->b, env, depth - 1));
      case CType::Kind::Arrow: {
        std::string x = "x" + std::to_string(fresh++);
        Env inner = env;
        inner.emplace_back(x, t->a);
        return e_lam(x, t->a, term(t->b, inner, depth - 1));
      }
      default: return e_unit();
    }
  }
};

// Replaces the first literal found in checking position with a literal of a
// different base type.
ExprPtr swap_literal(const ExprPtr& e, bool& done) {
  if (done) return e;
  switch (e->kind) {
    case ExprKind::Int: done = true; return e_bytes("swapped");
    case ExprKind::Bytes: done = true; return e_int(7);
    case ExprKind::Lam: return e_lam(e->name, e->type, swap_literal(e->kids[0], done));
    case ExprKind::Pair: {
      ExprPtr a = swap_literal(e->kids[0], done);
      return e_pair(a, swap_literal(e->kids[1], done));
    }
    case ExprKind::Inl: return e_inl(swap_literal(e->kids[0], done));
    case ExprKind::Inr: return e_inr(swap_literal(e->kids[0], done));
    case ExprKind::Ann: return e_ann(swap_literal(e->kids[0], done), e->type);
    case ExprKind::Let: return e_let(e->name, swap_literal(e->kids[0], done), swap_literal(e->kids[1], done));
    case ExprKind::Case:
      return e_case(swap_literal(e->kids[0], done), e->name, swap_literal(e->kids[1], done), e->name2,
                    swap_literal(e->kids[2], done));
    default: return e;
  }
}

}  // namespace

TEST_CASE("random typed terms: round trip, acceptance, mutations rejected") {
  Gen g{std::mt19937_64(20261018)};
  int swapped = 0;
  for (int i = 0; i < 500; ++i) {
    CTypePtr t = g.type(3);
    ExprPtr e = g.term(t, {}, 4);
    CAPTURE(pretty(e));
    auto back = parse(pretty(e));
    REQUIRE(back.ok());
    CHECK(expr_equal(*back.value, e));
    CHECK(typecheck(e, t).ok());

    CHECK_FALSE(typecheck(e_pair(e, e_var("nowhere")), c_pair(t, c_int())).ok());
    CHECK_FALSE(typecheck(e_app(e_int(1), e_int(1)), c_int()).ok());

    bool done = false;
    ExprPtr m = swap_literal(e, done);
    if (done) {
      ++swapped;
      CHECK_FALSE(typecheck(m, t).ok());
    }
  }
  CHECK(swapped > 100);
}
