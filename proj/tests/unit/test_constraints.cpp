#include <doctest.h>

#include "seclink/constraints.hpp"
#include "seclink/demos/webserver.hpp"

using namespace seclink;

TEST_CASE("web server bundle passes the constraint suite") {
  SuiteOptions opt;
  opt.samples = 2000;
  auto r = validate_bundle(web::bundle(), opt);
  for (const auto& c : r.counterexamples) INFO(c.obligation << ": " << c.detail);
  CHECK(r.ok());
  for (const char* ob : {"c1_post:handler", "c2_post:handler", "c_pre:send", "c_post:send", "pi_sound"}) {
    CAPTURE(ob);
    REQUIRE(r.obligations.count(ob) == 1);
    const auto& st = r.obligations.at(ob);
    CHECK(st.samples == 2000);
    CHECK(st.samples - st.vacuous > 0);
  }
}

TEST_CASE("weakened handler check is caught") {
  SuiteOptions opt;
  opt.samples = 2000;
  auto r = validate_bundle(web::bundle(web::weakened_handler_cks()), opt);
  CHECK_FALSE(r.ok());
  CHECK(r.obligations.at("c1_post:handler").failures > 0);
  CHECK(r.obligations.at("c_pre:send").failures == 0);
}

TEST_CASE("missing spec is reported") {
  using L = WebState;
  auto cks = check_node<L>("handler", web::handler_check(), empty_node<L>(leaf<L>(), empty_node<L>(leaf<L>(), leaf<L>())),
                           leaf<L>());
  SuiteOptions opt;
  opt.samples = 10;
  auto r = validate_bundle(web::bundle(cks), opt);
  CHECK_FALSE(r.ok());
  CHECK(r.obligations.count("spec:handler") == 1);
}

TEST_CASE("permissive monitor is caught by pi_sound") {
  auto b = web::bundle();
  b.pi.decide = [](const WebState&, IoOp, const IoArgs&) { return true; };
  SuiteOptions opt;
  opt.samples = 500;
  auto r = validate_bundle(b, opt);
  CHECK(r.obligations.at("pi_sound").failures > 0);
}
