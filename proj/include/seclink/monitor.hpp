#pragma once

#include <any>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seclink/comp.hpp"
#include "seclink/mstate.hpp"
#include "seclink/traces.hpp"

namespace seclink {

/// Pi: decidable guard over the monitor state.  Soundness obligation:
/// abstracts(s, h) && decide(s, op, arg) implies sigma(h, Ctx, op, arg).
template <class S>
struct Policy {
  std::string name;
  std::function<bool(const S&, IoOp, const IoArgs&)> decide;
};

struct Denial {
  IoOp op;
  IoArgs args;
};
using DenialLog = std::shared_ptr<std::vector<Denial>>;

class SecureIoLib;

/// Builds the secure IO library guarded by `pi`.  The interpreter must run
/// with the MStateDesc whose carrier is S.
template <class S>
SecureIoLib enforce_policy(const Policy<S>& pi, DenialLog log = nullptr);

/// The only IO capability a context ever holds.  Every event it emits is
/// Ctx-tagged; a refused call emits nothing and returns Contract_failure.
class SecureIoLib {
 public:
  Comp<IoResult> secure_call(IoOp op, IoArgs args) const;

  Comp<Either<Fd>> openfile(std::string path, int flags = kReadOnly, int mode = 0) const;
  Comp<Either<Bytes>> read(Fd fd) const;
  Comp<Either<Unit>> write(Fd fd, Bytes data) const;
  Comp<Either<Unit>> close(Fd fd) const;
  Comp<Either<Fd>> socket() const;

  const std::string& policy_name() const { return name_; }

  template <class S>
  friend SecureIoLib enforce_policy(const Policy<S>& pi, DenialLog log);

 private:
  using Decide = std::function<bool(const std::any&, IoOp, const IoArgs&)>;
  SecureIoLib(std::string name, Decide decide, DenialLog log)
      : name_(std::move(name)), decide_(std::move(decide)), log_(std::move(log)) {}

  std::string name_;
  Decide decide_;
  DenialLog log_;
};

template <class S>
SecureIoLib enforce_policy(const Policy<S>& pi, DenialLog log) {
  auto decide = [d = pi.decide](const std::any& s, IoOp op, const IoArgs& a) {
    return d(std::any_cast<const S&>(s), op, a);
  };
  return SecureIoLib(pi.name, std::move(decide), std::move(log));
}

// Shipped monitor states.

struct WebState {
  std::vector<Fd> ctx_opened;
  bool responded = false;
  std::vector<Fd> written;
  friend bool operator==(const WebState&, const WebState&) = default;
};

MStateDesc<WebState> webserver_mstate();

/// The state is the history itself.
MStateDesc<Trace> full_trace_mstate();

/// Only the most recent event.
MStateDesc<std::optional<Event>> last_event_mstate();

/// No information at all.
MStateDesc<Unit> stateless_mstate();

PolicySpec webserver_sigma();
Policy<WebState> webserver_pi();

}  // namespace seclink
