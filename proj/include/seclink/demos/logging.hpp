#pragma once

// A logging IO library handed to an untrusted context that holds initial
// control.  Every IO call of the context must be announced through the
// logger, and every log line must be followed by a context call.

#include <optional>

#include "seclink/boundary.hpp"
#include "seclink/constraints.hpp"
#include "seclink/linker.hpp"

namespace seclink::logging {

using LastEvent = std::optional<Event>;

inline constexpr Fd kStdout{1};

/// bytes -> unit, errors implicit.
Type logger_type();

/// Ctx op: the previous event is the successful Prog log write of that op's
/// name.  Prog Write: first event, or right after a Ctx event.  Nothing else.
PolicySpec sigma();
Policy<LastEvent> pi();

ArrowSpec logger_spec();
/// Last event absent or by the context.
Check<LastEvent> logger_check();
CheckTree<LastEvent> logger_cks();

/// The library itself: writes its argument to stdout.
DualSourceProg logger();

DualInterface<LastEvent> interface(Diagnostics diag = {});
Bundle<LastEvent> bundle();

/// Whole-program guarantee: enforced_locally(sigma, [], lt).
TraceProperty guarantee();

}  // namespace seclink::logging
