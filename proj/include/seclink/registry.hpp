#pragma once

// Named programs, contexts and interfaces, and a uniform way to link and
// run them.  Used by the command-line tool and the acceptance suite.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seclink/constraints.hpp"
#include "seclink/demos/webserver.hpp"
#include "seclink/scenario.hpp"

namespace seclink {

enum class Mode { ProgFirst, CtxFirst };

std::string_view mode_name(Mode m);
std::optional<Mode> mode_from_name(std::string_view s);

class RegistryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProgramInfo {
  std::string name;
  Mode mode;
  std::string interface;  // bundle name, also the policy name of its monitor
  std::string policy;
  std::string description;
};

const std::vector<ProgramInfo>& programs();
const ProgramInfo& program_info(const std::string& name);

/// Names accepted by verify-bundle.
std::vector<std::string> interface_names();

/// Built-in native contexts per interface.
std::vector<std::string> native_contexts(const std::string& interface);

/// *.ctx files in the context directory, without extension.
std::vector<std::string> dsl_contexts(const std::string& prefix = "");

/// Resolves a context for a prog-first interface: a built-in name, a DSL
/// name, dsl:NAME or file:PATH.  DSL sources are compiled against ctype.
TargetCtx load_context(const std::string& interface, const std::string& spec, const Type& ctype);
/// Same for a context-first context (always DSL).
DualTargetCtx load_dual_context(const std::string& spec, const Type& ptype);

std::string context_dir();
std::string scenario_dir();

struct RunOutcome {
  std::string program;
  std::string context;
  std::string scenario;
  Mode mode = Mode::ProgFirst;
  std::string policy;
  int result = 0;
  Trace local;  // chronological
  World world;
  std::vector<std::string> contract_failures;
  std::vector<Denial> denials;
  std::vector<web::HandlerOutcome> handler_outcomes;  // web server only
  std::map<std::string, bool> properties;
  std::string checked;  // property deciding success
  bool audit_ok = true;

  bool ok() const { return properties.at(checked); }
};

/// Property names evaluated on every run: "psi" (program post-condition,
/// prog-first) or "sigma" (enforced_locally Sigma [] lt, ctx-first);
/// "ctx_sigma" (every context event respects Sigma);
/// "every_request_gets_a_response" (web server only); and "audit" (the
/// monitor state abstracted the history at every step).
std::vector<std::string> property_names(const std::string& program);

struct RunOptions {
  std::string program;
  std::string context;  // built-in name, DSL name, dsl:NAME, or file:PATH
  Mode mode = Mode::ProgFirst;
  std::optional<std::string> check;
};

/// Throws RegistryError for unknown names, a mode that does not match the
/// program, a policy mismatch with the scenario, or a context that fails
/// to compile.
RunOutcome run_linked(const Scenario& scenario, const RunOptions& opt);

/// Runs the constraint suite for a named interface.  "webserver-weakened"
/// is the web server bundle with its handler check replaced by `true`.
SuiteReport verify_bundle(const std::string& interface, const SuiteOptions& opt = {});

}  // namespace seclink
