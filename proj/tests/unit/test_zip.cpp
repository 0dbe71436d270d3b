#include <doctest.h>

#include <fstream>
#include <sstream>

#include "seclink/demos/zip.hpp"
#include "seclink/dsl.hpp"

using namespace seclink;

namespace {

std::string read_context(const std::string& name) {
  std::ifstream in(std::string(SECLINK_CONTEXT_DIR) + "/" + name + ".ctx");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

World inputs() {
  World w;
  w.add_file("/in/a.txt", "alpha");
  w.add_file("/in/b.txt", "beta");
  return w;
}

struct Run {
  RunResult<int> run;
  Diagnostics diag;
};

Run run_zip(const TargetCtx& ctx, zip::ProgramConfig cfg = {}, World w = inputs()) {
  Diagnostics diag{std::make_shared<std::vector<std::string>>(), std::make_shared<std::vector<Denial>>()};
  auto I = zip::interface(diag);
  auto whole = link_target(compile_interface(I), compile_prog(I, zip::program(cfg)), ctx);
  return {run_whole(whole, std::move(w), I.mstate), diag};
}

TargetCtx dsl_ctx(const std::string& name) {
  auto c = dsl::compile_context(read_context(name), zip::zip_type());
  INFO(c.error.to_string());
  REQUIRE(c.ok());
  return *c.value;
}

}  // namespace

TEST_CASE("benign zip archives both inputs") {
  for (const TargetCtx& ctx : {zip::benign_zip(), dsl_ctx("zip_benign")}) {
    auto r = run_zip(ctx);
    CHECK(r.run.result == 2);
    CHECK(r.run.world.files().at(zip::kArchive) == "ZIP\nentry:alpha\nentry:beta\n");
    CHECK(zip::psi()({}, r.run.result, r.run.local));
    CHECK(r.diag.denials->empty());
    CHECK(r.diag.checks->empty());
  }
}

TEST_CASE("hand-written and DSL benign zip agree") {
  auto a = run_zip(zip::benign_zip());
  auto b = run_zip(dsl_ctx("zip_benign"));
  CHECK(a.run.local == b.run.local);
}

TEST_CASE("zip context opening its own file is blocked by the monitor") {
  auto r = run_zip(dsl_ctx("zip_own_file"));
  CHECK(r.run.result == 0);
  REQUIRE(r.diag.denials->size() == 2);
  CHECK(r.diag.denials->front().op == IoOp::Openfile);
  for (const Event& e : r.run.local) CHECK(e.caller == Caller::Prog);
  CHECK(zip::psi()({}, r.run.result, r.run.local));
}

TEST_CASE("writes to stdout are blocked, archive writes are not") {
  auto r = run_zip(dsl_ctx("zip_exfiltrate"));
  CHECK(r.run.result == 2);
  CHECK(r.run.world.console().empty());
  CHECK(r.diag.denials->size() == 2);
  CHECK(r.run.world.files().at(zip::kArchive) == "alphabeta");
}

TEST_CASE("closing an input is blocked") {
  auto r = run_zip(dsl_ctx("zip_close_input"));
  CHECK(r.run.result == 0);
  CHECK(r.diag.denials->size() == 2);
  CHECK(zip::psi()({}, r.run.result, r.run.local));
}

TEST_CASE("closed descriptor handed to zip_file yields a contract failure") {
  auto r = run_zip(zip::benign_zip(), zip::ProgramConfig{true});
  CHECK(r.run.result == 1);
  REQUIRE(r.diag.checks->size() == 1);
  CHECK(r.diag.checks->front() == "post:zip_file");
  CHECK(r.diag.denials->size() == 1);
  CHECK(zip::psi()({}, r.run.result, r.run.local));
}

TEST_CASE("missing input: nothing is archived") {
  World w;
  w.add_file("/in/a.txt", "alpha");
  auto r = run_zip(zip::benign_zip(), {}, w);
  CHECK(r.run.result == 0);
  CHECK(r.run.world.files().at(zip::kArchive).empty());
}

TEST_CASE("zip bundle passes the constraint suite") {
  SuiteOptions opt;
  opt.samples = 1000;
  auto r = validate_bundle(zip::bundle(), opt);
  for (const auto& c : r.counterexamples) INFO(c.obligation << ": " << c.detail);
  CHECK(r.ok());
  CHECK(r.obligations.count("c1_post:zip_file") == 1);
}
