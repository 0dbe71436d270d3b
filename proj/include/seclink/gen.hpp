#pragma once

// Random events, traces and boundary values for property tests and the
// constraint suite.  Everything is drawn from a small vocabulary so that
// descriptors, paths and payloads collide often.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "seclink/dyn.hpp"
#include "seclink/io.hpp"
#include "seclink/traces.hpp"

namespace seclink {

struct Vocabulary {
  std::vector<std::string> paths{"/temp/index.html", "/temp/../etc/passwd", "/etc/passwd", "/tmp/scratch",
                                 "/in/a.txt",        "/out/archive.zip"};
  std::vector<Bytes> payloads{"", "hello", "GET / HTTP/1.1\r\n\r\n", "HTTP/1.1 200 OK\r\nContent-Length: 0\r\n\r\n"};
  int max_fd = 8;
  std::vector<IoOp> ops{kAllIoOps.begin(), kAllIoOps.end()};
};

/// Values mentioned by a sample (for example the descriptors inside x),
/// preferred when drawing event arguments.
struct Hints {
  std::vector<Fd> fds;
  std::vector<Bytes> bytes;
};

Hints hints_of(const DynValue& v);

class TraceGen {
 public:
  explicit TraceGen(std::uint64_t seed, Vocabulary v = {});

  std::mt19937_64& rng() { return rng_; }
  const Vocabulary& vocabulary() const { return vocab_; }

  int uniform(int lo, int hi);
  bool coin(double p = 0.5);

  Fd fd(const Hints& h = {});
  Bytes bytes(const Hints& h = {});
  IoOp op();
  IoArgs args(IoOp op, const Hints& h = {});
  IoResult result(IoOp op, const Hints& h = {});
  Event event(const Hints& h = {});
  Event event(Caller c, const Hints& h = {});

  /// Most-recent-first, length in [0, max_len].
  Trace history(int max_len, const Hints& h = {});

  /// Chronological local trace.  Each step keeps a sigma-respecting event
  /// with probability `bias` (when one can be found); the empty trace is
  /// drawn often.
  Trace local(const PolicySpec& sigma, const Trace& h, int max_len, const Hints& hints = {}, double bias = 0.85);

  /// A value of type t.  Arrows become closures that succeed with a random
  /// value of their codomain without performing IO.
  DynValue value(const Type& t, const Hints& h = {});
  /// `either cod err`, sometimes Contract_failure.
  DynValue result_of(const Type& cod, const Hints& h = {});

 private:
  std::mt19937_64 rng_;
  Vocabulary vocab_;
};

}  // namespace seclink
