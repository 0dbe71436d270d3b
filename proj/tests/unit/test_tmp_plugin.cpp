#include <doctest.h>

#include <fstream>
#include <sstream>

#include "seclink/demos/tmp_plugin.hpp"
#include "seclink/dsl.hpp"

using namespace seclink;

namespace {

struct Run {
  RunResult<int> run;
  Diagnostics diag;
};

Run run_plugin(const std::string& name) {
  std::ifstream in(std::string(SECLINK_CONTEXT_DIR) + "/" + name + ".ctx");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  auto ctx = dsl::compile_context(ss.str(), tmp_plugin::plugin_type());
  INFO(ctx.error.to_string());
  REQUIRE(ctx.ok());
  Diagnostics diag{std::make_shared<std::vector<std::string>>(), std::make_shared<std::vector<Denial>>()};
  auto I = tmp_plugin::interface(diag);
  auto whole = link_target(compile_interface(I), compile_prog(I, tmp_plugin::program()), *ctx.value);
  World w;
  w.add_file("/etc/passwd", "root");
  return {run_whole(whole, std::move(w), I.mstate), diag};
}

}  // namespace

TEST_CASE("tmp plugin: scratch file allowed") {
  auto r = run_plugin("tmp_count");
  CHECK(r.run.result == 5);
  CHECK(r.run.world.files().at("/tmp/scratch") == "12345");
  CHECK(r.run.world.console() == "5\n");
  CHECK(tmp_plugin::psi()({}, r.run.result, r.run.local));
}

TEST_CASE("tmp plugin: escapes and stdout are refused") {
  auto esc = run_plugin("tmp_escape");
  CHECK(esc.run.result == 0);
  CHECK(esc.diag.denials->size() == 1);
  auto out = run_plugin("tmp_stdout");
  CHECK(out.run.result == -3);
  CHECK(out.run.world.console() == "plugin failed\n");
}

TEST_CASE("tmp plugin: negative result is a contract failure") {
  auto r = run_plugin("tmp_negative");
  CHECK(r.run.result == -3);
  REQUIRE(r.diag.checks->size() == 1);
  CHECK(r.diag.checks->front() == "post:plugin");
}

TEST_CASE("tmp plugin bundle passes the constraint suite") {
  SuiteOptions opt;
  opt.samples = 1000;
  auto r = validate_bundle(tmp_plugin::bundle(), opt);
  for (const auto& c : r.counterexamples) INFO(c.obligation << ": " << c.detail);
  CHECK(r.ok());
}
