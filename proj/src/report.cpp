#include "seclink/report.hpp"

#include <json.hpp>
#include <sstream>

namespace seclink {

namespace {

using json = nlohmann::json;

// Arbitrary bytes are not valid UTF-8 in general; dump replaces bad
// sequences instead of throwing.
std::string dump(const json& j) { return j.dump(2, ' ', false, json::error_handler_t::replace); }

json event_json(const Event& e) {
  return json{{"caller", caller_name(e.caller)},
              {"op", op_name(e.op)},
              {"args", format_args(e.args)},
              {"result", format_result(e.result)}};
}

std::string outcome(const Either<Unit>& r) {
  if (r.is_inl()) return "ok";
  std::string s = "error " + std::string(errc_name(r.right().code));
  if (!r.right().provenance.empty()) s += " (" + r.right().provenance + ")";
  return s;
}

}  // namespace

std::string trace_dump(const Trace& lt) {
  std::string out;
  for (const Event& e : lt) out += format_event(e) + "\n";
  return out;
}

std::string report_text(const RunOutcome& r) {
  std::ostringstream os;
  os << "program   " << r.program << " (" << mode_name(r.mode) << ", policy " << r.policy << ")\n";
  os << "context   " << r.context << "\n";
  os << "scenario  " << r.scenario << "\n";
  os << "result    " << r.result << "\n";
  os << "events    " << r.local.size() << "\n";
  for (const auto& [name, ok] : r.properties) {
    os << (ok ? "  holds   " : "  FAILS   ") << name << (name == r.checked ? "  [checked]" : "") << "\n";
  }
  if (!r.contract_failures.empty()) {
    os << "contract failures:";
    for (const auto& c : r.contract_failures) os << " " << c;
    os << "\n";
  }
  if (!r.denials.empty()) {
    os << "monitor denials:\n";
    for (const auto& d : r.denials) os << "  " << op_name(d.op) << " " << format_args(d.args) << "\n";
  }
  for (const auto& h : r.handler_outcomes) os << "handler fd " << h.client.value << ": " << outcome(h.result) << "\n";
  if (!r.ok()) {
    os << "violation of " << r.checked << ": result " << r.result << " with trace\n";
    std::istringstream lines(trace_dump(r.local));
    for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
  }
  return os.str();
}

std::string report_json(const RunOutcome& r) {
  json j;
  j["program"] = r.program;
  j["context"] = r.context;
  j["scenario"] = r.scenario;
  j["mode"] = mode_name(r.mode);
  j["policy"] = r.policy;
  j["result"] = r.result;
  j["checked"] = r.checked;
  j["ok"] = r.ok();
  j["properties"] = r.properties;
  j["contract_failures"] = r.contract_failures;
  j["denials"] = json::array();
  for (const auto& d : r.denials) j["denials"].push_back({{"op", op_name(d.op)}, {"args", format_args(d.args)}});
  j["handler_outcomes"] = json::array();
  for (const auto& h : r.handler_outcomes) {
    json o{{"client_fd", h.client.value}, {"ok", h.result.is_inl()}};
    if (h.result.is_inr()) {
      o["error"] = errc_name(h.result.right().code);
      o["provenance"] = h.result.right().provenance;
    }
    j["handler_outcomes"].push_back(o);
  }
  j["trace"] = json::array();
  for (const Event& e : r.local) j["trace"].push_back(event_json(e));
  json responses = json::object();
  for (const auto& [id, bytes] : r.world.responses()) responses[std::to_string(id)] = bytes;
  j["responses"] = responses;
  j["console"] = r.world.console();
  return dump(j) + "\n";
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "bundle " << r.bundle << ": " << (r.ok() ? "no counterexamples" : "COUNTEREXAMPLES FOUND") << "\n";
  for (const auto& [name, st] : r.obligations) {
    os << "  " << name << ": " << st.samples << " samples, " << st.samples - st.vacuous << " non-vacuous, "
       << st.failures << " failures\n";
  }
  for (const auto& c : r.counterexamples) os << "  counterexample " << c.obligation << ": " << c.detail << "\n";
  return os.str();
}

std::string report_json(const SuiteReport& r) {
  json j;
  j["bundle"] = r.bundle;
  j["ok"] = r.ok();
  j["obligations"] = json::object();
  for (const auto& [name, st] : r.obligations) {
    j["obligations"][name] = {{"samples", st.samples}, {"vacuous", st.vacuous}, {"failures", st.failures}};
  }
  j["counterexamples"] = json::array();
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back({{"obligation", c.obligation}, {"detail", c.detail}});
  return dump(j) + "\n";
}

}  // namespace seclink
