#pragma once

// Archiving with an untrusted zip function that returns a callback.  The
// context may only read and write descriptors the program opened and has
// not closed.  The monitor keeps the whole trace.

#include "seclink/boundary.hpp"
#include "seclink/constraints.hpp"
#include "seclink/linker.hpp"

namespace seclink::zip {

using ZipFile = Fn<Fd, Unit>;
using Zip = Fn<Fd, ZipFile>;

/// fd -> (fd -> unit), errors implicit.
Type zip_type();

PolicySpec sigma();
Policy<Trace> pi();

ArrowSpec zip_spec();
ArrowSpec zip_file_spec();
/// The descriptor handed to zip_file was opened by the program and is
/// still open when the call starts.
Check<Trace> zip_file_check();
CheckTree<Trace> zip_cks();

PostCond psi();

SourceInterface<Trace> interface(Diagnostics diag = {});
Bundle<Trace> bundle();

inline constexpr const char* kArchive = "/out/archive.zip";
inline constexpr const char* kInputs[] = {"/in/a.txt", "/in/b.txt"};

struct ProgramConfig {
  /// Close the second input before handing it to zip_file.
  bool pass_closed_fd = false;
};

/// Opens the archive and the inputs, calls zip on the archive and the
/// returned zip_file on each input, then closes everything.  Returns the
/// number of inputs archived, or -2 if zip itself failed.
SourceProg program(ProgramConfig cfg = {});

/// Writes a header, then appends each input as an entry.
TargetCtx benign_zip();

}  // namespace seclink::zip
