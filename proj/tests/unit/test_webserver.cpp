#include <doctest.h>

#include "seclink/demos/http.hpp"
#include "seclink/demos/webserver.hpp"

using namespace seclink;

namespace {

World three_requests() {
  World w;
  w.add_file("/temp/index.html", "<h1>hi</h1>");
  w.add_connection(1, "GET /index.html HTTP/1.1\r\nHost: x\r\n\r\n");
  w.add_connection(2, "GET /missing HTTP/1.1\r\n\r\n");
  w.add_connection(3, "garbage");
  return w;
}

struct Outcome {
  RunResult<int> run;
  web::OutcomeLog outcomes;
};

Outcome run_handler(const TargetCtx& ctx, World w) {
  auto log = std::make_shared<std::vector<web::HandlerOutcome>>();
  auto I = web::interface();
  auto P = compile_prog(I, web::web_server({}, log));
  auto whole = link_target(compile_interface(I), P, ctx);
  return {run_whole(whole, std::move(w), I.mstate), log};
}

}  // namespace

TEST_CASE("http grammar") {
  CHECK(http::valid_http_request("GET / HTTP/1.1\r\n\r\n"));
  CHECK_FALSE(http::valid_http_request("GET / HTTP/1.1\r\n"));
  CHECK_FALSE(http::valid_http_request("get / HTTP/1.1\r\n\r\n"));
  CHECK(http::valid_http_response(http::http_response(200, "x")));
  CHECK_FALSE(http::valid_http_response("hello"));
  CHECK(http::request_path("GET /a/b?q=1 HTTP/1.0\r\n\r\n") == "/a/b");
}

TEST_CASE("benign handler serves files under /temp") {
  auto o = run_handler(web::benign_handler(), three_requests());
  CHECK(o.run.result == 3);
  CHECK(every_request_gets_a_response(o.run.local));
  CHECK(o.run.audit_ok());
  CHECK(o.run.world.responses().at(1) == http::http_response(200, "<h1>hi</h1>"));
  CHECK(o.run.world.responses().at(2) == http::http_response(404, "not found"));
  CHECK(o.run.world.responses().at(3) == web::bad_request_response());
  for (const Event& e : o.run.local) {
    if (e.caller == Caller::Ctx && e.op == IoOp::Openfile) {
      CHECK(in_folder(std::get<OpenfileArgs>(e.args).path, "/temp"));
    }
  }
}

TEST_CASE("adversarial handlers are stopped by the expected mechanism") {
  const char* expected[] = {"post:handler", "pre:send", "monitor", "monitor", "monitor"};
  for (int k = 1; k <= 5; ++k) {
    CAPTURE(k);
    auto o = run_handler(web::adversarial_handler(k), three_requests());
    CHECK(every_request_gets_a_response(o.run.local));
    CHECK(o.run.audit_ok());
    REQUIRE(o.outcomes->size() == 2);
    for (const auto& h : *o.outcomes) {
      REQUIRE(h.result.is_inr());
      CHECK(h.result.right().code == Errc::contract_failure);
      CHECK(h.result.right().provenance == expected[k - 1]);
    }
    for (const Event& e : o.run.local) CHECK(e.caller == Caller::Prog);
    CHECK(o.run.world.responses().at(1) == web::bad_request_response());
  }
}

TEST_CASE("empty world serves nothing") {
  auto o = run_handler(web::benign_handler(), World{});
  CHECK(o.run.result == 0);
  CHECK(every_request_gets_a_response(o.run.local));
}
