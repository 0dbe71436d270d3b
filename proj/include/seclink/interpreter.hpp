#pragma once

#include <any>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "seclink/comp.hpp"
#include "seclink/mstate.hpp"
#include "seclink/world.hpp"

namespace seclink {

struct InterpOptions {
  bool check_abstracts = true;  // assert the ghost invariant after every step
  std::size_t max_steps = 1'000'000;
};

template <class A>
struct RunResult {
  A result;
  World world;
  Trace history;  // full ghost history, most-recent-first
  Trace local;    // events of this run, chronological
  std::any mstate;
  std::size_t ctx_events = 0;
  std::size_t mediated_calls = 0;

  bool audit_ok() const { return ctx_events == mediated_calls; }
};

/// Raised when the ghost invariant or the op signature is broken.  Never
/// raised for in-band IO failures.
class InterpreterFault : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Runs `c` against `w`, starting from history `h` and monitor state `s`
/// (defaults to desc.init).  Every executed IO node yields exactly one event
/// and one upd step; GetMState nodes yield none.
template <class A>
RunResult<A> interpret(const Comp<A>& c, World w, const AnyMState& desc, Trace h,
                       std::optional<std::any> s, const InterpOptions& opt = {}) {
  std::any state = s ? std::move(*s) : desc.init;
  if (opt.check_abstracts && !desc.abstracts(state, h)) {
    throw InterpreterFault("initial monitor state does not abstract the history (" + desc.name + ")");
  }
  Trace local;
  std::size_t ctx_events = 0;
  std::size_t mediated = 0;
  Comp<A> cur = c;
  std::size_t steps = 0;
  while (!cur.is_return()) {
    if (++steps > opt.max_steps) throw InterpreterFault("step budget exhausted");
    if (const auto* io = std::get_if<detail::IoNode<A>>(&cur.node())) {
      IoResult r = w.perform(io->caller, io->op, io->args);
      if (!result_matches(io->op, r)) throw InterpreterFault("world returned an ill-shaped result");
      Event e{io->caller, io->op, io->args, r};
      if (e.caller == Caller::Ctx) ++ctx_events;
      if (io->mediated) ++mediated;
      state = desc.upd(state, e);
      h.insert(h.begin(), e);
      local.push_back(e);
      if (opt.check_abstracts && !desc.abstracts(state, h)) {
        throw InterpreterFault("monitor state lost track of the history (" + desc.name + ")");
      }
      Comp<A> next = io->cont(r);
      cur = std::move(next);
    } else {
      const auto& st = std::get<detail::StateNode<A>>(cur.node());
      Comp<A> next = st.cont(state);
      cur = std::move(next);
    }
  }
  return RunResult<A>{cur.value(), std::move(w), std::move(h), std::move(local),
                      std::move(state), ctx_events, mediated};
}

template <class A>
RunResult<A> interpret(const Comp<A>& c, World w, const AnyMState& desc, const InterpOptions& opt = {}) {
  return interpret(c, std::move(w), desc, Trace{}, std::nullopt, opt);
}

}  // namespace seclink
