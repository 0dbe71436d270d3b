#pragma once

// A plugin computing a number, confined to files under /tmp.  The monitor
// keeps no state: every decision looks at the call alone.

#include "seclink/boundary.hpp"
#include "seclink/constraints.hpp"
#include "seclink/linker.hpp"

namespace seclink::tmp_plugin {

using Plugin = Fn<Unit, std::int64_t>;

/// unit -> int, errors implicit.
Type plugin_type();

/// Ctx may open paths inside /tmp and read, write or close descriptors
/// other than 0, 1 and 2.  Prog may do anything.
PolicySpec sigma();
Policy<Unit> pi();

ArrowSpec plugin_spec();
/// Errors pass; a successful result must be non-negative.
Check<Unit> plugin_check();
CheckTree<Unit> plugin_cks();

PostCond psi();

SourceInterface<Unit> interface(Diagnostics diag = {});
Bundle<Unit> bundle();

/// Calls the plugin once and prints its result on stdout.  Returns the
/// result, or -3 if the plugin failed.
SourceProg program();

}  // namespace seclink::tmp_plugin
