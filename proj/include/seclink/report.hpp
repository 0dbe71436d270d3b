#pragma once

// Human-readable and JSON renderings of runs and suite results.

#include <string>

#include "seclink/registry.hpp"

namespace seclink {

std::string report_text(const RunOutcome& r);
std::string report_json(const RunOutcome& r);

std::string report_text(const SuiteReport& r);
std::string report_json(const SuiteReport& r);

/// One `CALLER OP ARG -> RESULT` line per event.
std::string trace_dump(const Trace& lt);

}  // namespace seclink
