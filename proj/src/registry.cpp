#include "seclink/registry.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "seclink/demos/logging.hpp"
#include "seclink/demos/tmp_plugin.hpp"
#include "seclink/demos/zip.hpp"
#include "seclink/dsl.hpp"

namespace seclink {

std::string_view mode_name(Mode m) { return m == Mode::ProgFirst ? "prog-first" : "ctx-first"; }

std::optional<Mode> mode_from_name(std::string_view s) {
  if (s == "prog-first") return Mode::ProgFirst;
  if (s == "ctx-first") return Mode::CtxFirst;
  return std::nullopt;
}

const std::vector<ProgramInfo>& programs() {
  static const std::vector<ProgramInfo> all = {
      {"webserver", Mode::ProgFirst, "webserver", "webserver", "file server delegating each request to a handler"},
      {"zip", Mode::ProgFirst, "zip", "zip", "archives /in/a.txt and /in/b.txt into /out/archive.zip"},
      {"zip_closed_fd", Mode::ProgFirst, "zip", "zip", "as zip, but hands a closed descriptor to zip_file"},
      {"tmp_plugin", Mode::ProgFirst, "tmp_plugin", "allow_all_in_tmp", "prints the number a plugin computes"},
      {"logger", Mode::CtxFirst, "logging", "logging", "logging library handed to a context in control"},
  };
  return all;
}

const ProgramInfo& program_info(const std::string& name) {
  for (const auto& p : programs()) {
    if (p.name == name) return p;
  }
  throw RegistryError("unknown program " + name);
}

std::vector<std::string> interface_names() {
  return {"webserver", "webserver-weakened", "logging", "zip", "tmp_plugin"};
}

std::vector<std::string> native_contexts(const std::string& interface) {
  if (interface == "webserver") return {"adv1", "adv2", "adv3", "adv4", "adv5", "benign"};
  if (interface == "zip") return {"benign_zip"};
  return {};
}

std::string context_dir() {
  if (const char* env = std::getenv("SECLINK_CONTEXT_DIR")) return env;
  return SECLINK_CONTEXT_DIR;
}

std::string scenario_dir() {
  if (const char* env = std::getenv("SECLINK_SCENARIO_DIR")) return env;
  return SECLINK_SCENARIO_DIR;
}

std::vector<std::string> dsl_contexts(const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(context_dir())) {
    std::string stem = e.path().stem().string();
    if (e.path().extension() == ".ctx" && stem.rfind(prefix, 0) == 0) out.push_back(stem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> property_names(const std::string& program) {
  const ProgramInfo& p = program_info(program);
  std::vector<std::string> out;
  out.push_back(p.mode == Mode::ProgFirst ? "psi" : "sigma");
  out.push_back("ctx_sigma");
  if (p.interface == "webserver") out.push_back("every_request_gets_a_response");
  out.push_back("audit");
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegistryError("cannot read context " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string context_source(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return read_file(spec.substr(5));
  std::string name = spec.rfind("dsl:", 0) == 0 ? spec.substr(4) : spec;
  std::string path = context_dir() + "/" + name + ".ctx";
  if (!std::filesystem::exists(path)) throw RegistryError("unknown context " + spec);
  return read_file(path);
}

}  // namespace

TargetCtx load_context(const std::string& interface, const std::string& spec, const Type& ctype) {
  if (interface == "webserver") {
    for (auto& [name, ctx] : web::handlers()) {
      if (name == spec) return ctx;
    }
  }
  if (interface == "zip" && spec == "benign_zip") return zip::benign_zip();
  auto c = dsl::compile_context(context_source(spec), ctype);
  if (!c.ok()) throw RegistryError("context " + spec + ": " + c.error.to_string());
  return *c.value;
}

DualTargetCtx load_dual_context(const std::string& spec, const Type& ptype) {
  auto c = dsl::compile_dual_context(context_source(spec), ptype);
  if (!c.ok()) throw RegistryError("context " + spec + ": " + c.error.to_string());
  return *c.value;
}

namespace {

Diagnostics fresh_diagnostics() {
  return Diagnostics{std::make_shared<std::vector<std::string>>(), std::make_shared<std::vector<Denial>>()};
}

bool ctx_events_allowed(const PolicySpec& sigma, const Trace& lt) {
  Trace h;
  for (const Event& e : lt) {
    if (e.caller == Caller::Ctx && !sigma(h, e.caller, e.op, e.args)) return false;
    h.insert(h.begin(), e);
  }
  return true;
}

void fill(RunOutcome& out, const RunResult<int>& r, const Diagnostics& d, const PolicySpec& sigma) {
  out.result = r.result;
  out.local = r.local;
  out.world = r.world;
  out.audit_ok = r.audit_ok();
  out.contract_failures = *d.checks;
  out.denials = *d.denials;
  out.properties["ctx_sigma"] = ctx_events_allowed(sigma, r.local);
  out.properties["audit"] = out.audit_ok;
}

template <class S>
void run_prog_first(RunOutcome& out, const SourceInterface<S>& I, const SourceProg& P, const TargetCtx& C,
                    World w) {
  auto whole = link_target(compile_interface(I), compile_prog(I, P), C);
  auto r = run_whole(whole, std::move(w), I.mstate);
  fill(out, r, I.diag, I.sigma);
  out.properties["psi"] = I.psi({}, r.result, r.local);
}

}  // namespace

RunOutcome run_linked(const Scenario& scenario, const RunOptions& opt) {
  const ProgramInfo& p = program_info(opt.program);
  if (p.mode != opt.mode) {
    throw RegistryError("program " + p.name + " runs in " + std::string(mode_name(p.mode)) + " mode");
  }
  if (scenario.policy && *scenario.policy != p.policy) {
    throw RegistryError("scenario " + scenario.name + " asks for policy " + *scenario.policy + " but program " +
                        p.name + " is monitored by " + p.policy);
  }
  RunOutcome out;
  out.checked = opt.check.value_or(p.mode == Mode::ProgFirst ? "psi" : "sigma");
  auto props = property_names(p.name);
  if (std::find(props.begin(), props.end(), out.checked) == props.end()) {
    throw RegistryError("property " + out.checked + " is not available for program " + p.name);
  }
  out.program = p.name;
  out.context = opt.context;
  out.scenario = scenario.name;
  out.mode = p.mode;
  out.policy = p.policy;
  Diagnostics diag = fresh_diagnostics();

  if (p.interface == "webserver") {
    auto log = std::make_shared<std::vector<web::HandlerOutcome>>();
    auto I = web::interface(diag);
    web::ServerConfig cfg;
    cfg.max_iterations = scenario.max_iterations;
    run_prog_first(out, I, web::web_server(cfg, log), load_context(p.interface, opt.context, I.ctype),
                   scenario.world());
    out.handler_outcomes = *log;
    out.properties["every_request_gets_a_response"] = every_request_gets_a_response(out.local);
  } else if (p.interface == "zip") {
    auto I = zip::interface(diag);
    zip::ProgramConfig cfg;
    cfg.pass_closed_fd = p.name == "zip_closed_fd";
    run_prog_first(out, I, zip::program(cfg), load_context(p.interface, opt.context, I.ctype),
                   scenario.world());
  } else if (p.interface == "tmp_plugin") {
    auto I = tmp_plugin::interface(diag);
    run_prog_first(out, I, tmp_plugin::program(), load_context(p.interface, opt.context, I.ctype),
                   scenario.world());
  } else {
    auto I = logging::interface(diag);
    auto whole = link_target_dual(I, compile_prog_dual(I, logging::logger()), load_dual_context(opt.context, I.ptype));
    auto r = interpret(whole, scenario.world(), erase(I.mstate));
    fill(out, r, diag, I.sigma);
    out.properties["sigma"] = enforced_locally(I.sigma, {}, r.local);
  }
  return out;
}

SuiteReport verify_bundle(const std::string& interface, const SuiteOptions& opt) {
  if (interface == "webserver") return validate_bundle(web::bundle(), opt);
  if (interface == "webserver-weakened") {
    auto b = web::bundle(web::weakened_handler_cks());
    b.name = "webserver-weakened";
    return validate_bundle(b, opt);
  }
  if (interface == "logging") {
    SuiteOptions o = opt;
    // Log lines are operation names; make them likely.
    for (IoOp op : kAllIoOps) o.vocabulary.payloads.emplace_back(op_name(op));
    return validate_bundle(logging::bundle(), o);
  }
  if (interface == "zip") return validate_bundle(zip::bundle(), opt);
  if (interface == "tmp_plugin") return validate_bundle(tmp_plugin::bundle(), opt);
  throw RegistryError("unknown interface " + interface);
}

}  // namespace seclink
