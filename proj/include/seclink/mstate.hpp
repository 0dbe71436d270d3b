#pragma once

#include <any>
#include <functional>
#include <string>

#include "seclink/io.hpp"

namespace seclink {

/// Monitor state with its abstraction relation.  `abstracts(init, {})` and
/// `abstracts(s, h) => abstracts(upd(s, e), e :: h)` are the two laws.
template <class S>
struct MStateDesc {
  std::string name;
  std::function<bool(const S&, const Trace&)> abstracts;
  S init;
  std::function<S(const S&, const Event&)> upd;
};

/// MStateDesc with the carrier erased, as the interpreter and the
/// contract machinery see it.
struct AnyMState {
  std::string name;
  std::function<bool(const std::any&, const Trace&)> abstracts;
  std::any init;
  std::function<std::any(const std::any&, const Event&)> upd;
  std::function<bool(const std::any&, const std::any&)> equal;
};

template <class S>
AnyMState erase(const MStateDesc<S>& d) {
  AnyMState out;
  out.name = d.name;
  out.abstracts = [f = d.abstracts](const std::any& s, const Trace& h) {
    return f(std::any_cast<const S&>(s), h);
  };
  out.init = d.init;
  out.upd = [f = d.upd](const std::any& s, const Event& e) -> std::any {
    return f(std::any_cast<const S&>(s), e);
  };
  out.equal = [](const std::any& a, const std::any& b) {
    return std::any_cast<const S&>(a) == std::any_cast<const S&>(b);
  };
  return out;
}

/// Fold of upd over a history (most-recent-first), starting from init.
template <class S>
S replay(const MStateDesc<S>& d, const Trace& history) {
  S s = d.init;
  for (auto it = history.rbegin(); it != history.rend(); ++it) s = d.upd(s, *it);
  return s;
}

}  // namespace seclink
