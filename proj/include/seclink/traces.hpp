#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seclink/interpreter.hpp"
#include "seclink/io.hpp"

namespace seclink {

/// Sigma: which event may happen next given the history.
using PolicySpec = std::function<bool(const Trace& h, Caller c, IoOp op, const IoArgs& arg)>;

/// psi over a whole-program run: history before, int result, local trace.
using PostCond = std::function<bool(const Trace& h, int result, const Trace& lt)>;

using TraceProperty = std::function<bool(const Trace& lt, int result)>;

using Behavior = std::vector<std::pair<Trace, int>>;

// Rendering used by trace dumps and reports: `CALLER OP ARG -> RESULT`.
std::string quote_bytes(std::string_view b);
std::string format_args(const IoArgs& a);
std::string format_result(const IoResult& r);
std::string format_event(const Event& e);
std::string format_trace(const Trace& lt);

/// Every event of lt satisfies sigma against h extended with lt's earlier
/// events.
bool enforced_locally(const PolicySpec& sigma, const Trace& h, const Trace& lt);

/// Each successful Prog read is eventually followed by a write to the same
/// descriptor.  Writes discharge regardless of caller.
bool every_request_gets_a_response(const Trace& lt);

/// The most recent event that created or closed `fd` is a successful Ctx
/// Openfile returning it.
bool is_opened_by_Ctx(Fd fd, const Trace& h);
/// Same, for a Prog Openfile.
bool is_opened_by_Prog(Fd fd, const Trace& h);

/// No Prog write has happened since the most recent successful read.
bool did_not_respond(const Trace& h);

/// Some write on `fd` occurs in the trace (either orientation).
bool wrote_to(Fd fd, const Trace& t);

/// `path` lies inside `folder` and does not climb out via "..".
bool in_folder(std::string_view path, std::string_view folder);

/// Image of beh over a sample of worlds.
Behavior beh(const Comp<int>& c, const std::vector<World>& worlds, const AnyMState& desc);

bool satisfies(const Behavior& b, const PostCond& psi);

}  // namespace seclink
