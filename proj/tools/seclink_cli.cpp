#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "seclink/registry.hpp"
#include "seclink/report.hpp"

using namespace seclink;

namespace {

int cmd_run(const std::string& scenario_path, RunOptions opt, const std::string& mode, const std::string& dump,
            bool as_json) {
  auto m = mode_from_name(mode);
  if (!m) {
    std::cerr << "unknown mode " << mode << " (prog-first or ctx-first)\n";
    return 2;
  }
  opt.mode = *m;
  RunOutcome r;
  try {
    r = run_linked(load_scenario(scenario_path), opt);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const RegistryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) {
      std::cerr << "cannot write " << dump << "\n";
      return 2;
    }
    out << trace_dump(r.local);
  }
  std::cout << (as_json ? report_json(r) : report_text(r));
  return r.ok() ? 0 : 1;
}

int cmd_verify(const std::string& interface, SuiteOptions opt, bool as_json) {
  SuiteReport r;
  try {
    r = verify_bundle(interface, opt);
  } catch (const RegistryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << (as_json ? report_json(r) : report_text(r));
  return r.ok() ? 0 : 1;
}

void cmd_list() {
  std::cout << "programs:\n";
  for (const auto& p : programs()) {
    std::cout << "  " << p.name << " [" << mode_name(p.mode) << ", policy " << p.policy << "] " << p.description
              << "\n";
  }
  std::cout << "interfaces:";
  for (const auto& i : interface_names()) std::cout << " " << i;
  std::cout << "\nbuilt-in contexts: webserver:";
  for (const auto& c : native_contexts("webserver")) std::cout << " " << c;
  std::cout << "  zip:";
  for (const auto& c : native_contexts("zip")) std::cout << " " << c;
  std::cout << "\nDSL contexts in " << context_dir() << " (dsl:NAME picks the file over a built-in):";
  for (const auto& c : dsl_contexts()) std::cout << " " << c;
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seclink: link untrusted contexts with monitored programs"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "link a program with a context and run it on a scenario");
  std::string scenario, mode = "prog-first", dump;
  RunOptions ropt;
  std::string check;
  bool run_json = false;
  run->add_option("--scenario", scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--program", ropt.program, "program name (see `list`)")->required();
  run->add_option("--context", ropt.context, "context name, or file:PATH for a DSL file")->required();
  run->add_option("--mode", mode, "prog-first or ctx-first");
  run->add_option("--check", check, "property deciding the exit code");
  run->add_option("--dump-trace", dump, "write the local trace to this file");
  run->add_flag("--json", run_json, "print the report as JSON");

  auto* verify = app.add_subcommand("verify-bundle", "run the constraint suite on an interface");
  std::string interface;
  SuiteOptions sopt;
  bool verify_json = false;
  verify->add_option("--interface", interface, "interface name (see `list`)")->required();
  verify->add_option("--samples", sopt.samples, "samples per obligation")->check(CLI::PositiveNumber);
  verify->add_option("--seed", sopt.seed, "random seed");
  verify->add_flag("--json", verify_json, "print the report as JSON");

  app.add_subcommand("list", "list programs, interfaces and contexts");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (!check.empty()) ropt.check = check;
    return cmd_run(scenario, ropt, mode, dump, run_json);
  }
  if (*verify) return cmd_verify(interface, sopt, verify_json);
  cmd_list();
  return 0;
}
