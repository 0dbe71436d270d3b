#pragma once

// Randomised validation of an interface bundle (sigma, pi, cks, arrow
// specs).  For every checked arrow the obligations depend on which way the
// arrow crosses the boundary:
//
//   imported (context function called by the program)
//     c1_post  pre x h && enforced_locally sigma h lt && abstracts s0 h &&
//              abstracts s1 (rev lt @ h) && ck x s0 r s1  ==>  post x h r lt
//     c2_post  pre x h && enforced_locally sigma h lt
//              ==>  post x h (Inr Contract_failure) lt
//   exported (program function called by the context)
//     c_pre    abstracts s0 h && abstracts s1 h && ck x s0 () s1  ==>  pre x h
//     c_post   pre x h && post x h r lt  ==>  enforced_locally sigma h lt
//
// plus soundness of the monitor:
//     pi_sound abstracts s h /\ decide s op arg  ==>  sigma h Ctx op arg
//
// States satisfying `abstracts` are produced by replaying traces through
// upd, which is the only way the runtime produces them.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seclink/contracts.hpp"
#include "seclink/gen.hpp"
#include "seclink/monitor.hpp"

namespace seclink {

template <class S>
struct Bundle {
  std::string name;
  Type type;
  PolicySpec sigma;
  Policy<S> pi;
  CheckTree<S> cks;
  MStateDesc<S> mstate;
  /// True when the root value is a program library handed to the context.
  bool exported = false;
};

struct SuiteOptions {
  int samples = 10000;  // per obligation
  std::uint64_t seed = 1;
  int max_history = 12;
  int max_local = 6;
  int max_counterexamples = 5;  // kept per obligation
  Vocabulary vocabulary;
};

struct Counterexample {
  std::string obligation;
  std::string detail;
};

struct ObligationStats {
  long samples = 0;
  long vacuous = 0;  // antecedent false
  long failures = 0;
};

struct SuiteReport {
  std::string bundle;
  std::map<std::string, ObligationStats> obligations;  // "c1_post:handler", "pi_sound", ...
  std::vector<Counterexample> counterexamples;

  bool ok() const {
    for (const auto& [k, v] : obligations) {
      if (v.failures != 0) return false;
    }
    return true;
  }
  long failures() const {
    long n = 0;
    for (const auto& [k, v] : obligations) n += v.failures;
    return n;
  }
};

namespace detail {

inline std::string one_line(const Trace& t) {
  std::string s;
  for (const Event& e : t) s += (s.empty() ? "" : "; ") + format_event(e);
  return "[" + s + "]";
}

inline std::string describe(const DynValue& x, const Trace& h, const DynValue* r, const Trace* lt) {
  std::string s = "x=" + dyn_to_string(x) + " h(newest first)=" + one_line(h);
  if (r) s += " r=" + dyn_to_string(*r);
  if (lt) s += " lt=" + one_line(*lt);
  return s;
}

/// Descriptors returned by the events of t.
inline Hints hints_of_trace(const Trace& t) {
  Hints hs;
  for (const Event& e : t) {
    if (e.result.is_inl()) {
      if (const Fd* fd = std::get_if<Fd>(&e.result.left())) hs.fds.push_back(*fd);
    }
  }
  return hs;
}

template <class S>
class Suite {
 public:
  Suite(const Bundle<S>& b, const SuiteOptions& opt) : b_(b), opt_(opt), gen_(opt.seed, opt.vocabulary) {}

  SuiteReport run() {
    report_.bundle = b_.name;
    walk(b_.type, b_.cks, b_.exported);
    pi_sound();
    return report_;
  }

 private:
  void walk(const Type& t, const CheckTree<S>& cks, bool exported) {
    if (!cks) return;
    if (t->kind == TypeDesc::Kind::Pair || t->kind == TypeDesc::Kind::Either) {
      walk(t->a, cks->left, exported);
      walk(t->b, cks->right, exported);
      return;
    }
    if (t->kind != TypeDesc::Kind::Arrow) return;
    if (cks->kind == TreeKind::Node) {
      if (!cks->spec) {
        fail("spec:" + cks->name, "checked arrow has no pre/post specification");
      } else if (exported) {
        c_pre(t, *cks);
        c_post(t, *cks);
      } else {
        c1_post(t, *cks);
        c2_post(t, *cks);
      }
    }
    walk(t->a, cks->left, !exported);
    walk(t->b, cks->right, exported);
  }

  S after(S s, const Trace& lt) const {
    for (const Event& e : lt) s = b_.mstate.upd(s, e);
    return s;
  }

  void fail(const std::string& ob, std::string detail) {
    auto& st = report_.obligations[ob];
    ++st.failures;
    if (st.failures <= opt_.max_counterexamples) report_.counterexamples.push_back({ob, std::move(detail)});
  }

  void c1_post(const Type& t, const CheckNode<S>& n) {
    const std::string ob = "c1_post:" + n.name;
    auto& st = report_.obligations[ob];
    for (int i = 0; i < opt_.samples; ++i) {
      ++st.samples;
      DynValue x = gen_.value(t->a);
      Hints hs = hints_of(x);
      Trace h = gen_.history(opt_.max_history, hs);
      Trace lt = gen_.local(b_.sigma, h, opt_.max_local, hs);
      DynValue r = gen_.result_of(t->b, hs);
      if (!n.spec->pre(x, h) || !enforced_locally(b_.sigma, h, lt)) {
        ++st.vacuous;
        continue;
      }
      S s0 = replay(b_.mstate, h);
      S s1 = after(s0, lt);
      if (n.ck(x, s0, r, s1) && !n.spec->post(x, h, r, lt)) fail(ob, describe(x, h, &r, &lt));
    }
  }

  void c2_post(const Type& t, const CheckNode<S>& n) {
    const std::string ob = "c2_post:" + n.name;
    auto& st = report_.obligations[ob];
    const DynValue cf = dyn_fail(Err::contract_failure(n.name));
    for (int i = 0; i < opt_.samples; ++i) {
      ++st.samples;
      DynValue x = gen_.value(t->a);
      Hints hs = hints_of(x);
      Trace h = gen_.history(opt_.max_history, hs);
      Trace lt = gen_.local(b_.sigma, h, opt_.max_local, hs);
      if (!n.spec->pre(x, h) || !enforced_locally(b_.sigma, h, lt)) {
        ++st.vacuous;
        continue;
      }
      if (!n.spec->post(x, h, cf, lt)) fail(ob, describe(x, h, &cf, &lt));
    }
  }

  void c_pre(const Type& t, const CheckNode<S>& n) {
    const std::string ob = "c_pre:" + n.name;
    auto& st = report_.obligations[ob];
    for (int i = 0; i < opt_.samples; ++i) {
      ++st.samples;
      DynValue x = gen_.value(t->a);
      Trace h = gen_.history(opt_.max_history, hints_of(x));
      S s = replay(b_.mstate, h);
      if (!n.ck(x, s, dyn_unit(), s)) {
        ++st.vacuous;
        continue;
      }
      if (!n.spec->pre(x, h)) fail(ob, describe(x, h, nullptr, nullptr));
    }
  }

  void c_post(const Type& t, const CheckNode<S>& n) {
    const std::string ob = "c_post:" + n.name;
    auto& st = report_.obligations[ob];
    for (int i = 0; i < opt_.samples; ++i) {
      ++st.samples;
      DynValue x = gen_.value(t->a);
      Hints hs = hints_of(x);
      Trace h = gen_.history(opt_.max_history, hs);
      // Short local traces, half of them unbiased, so that post has a
      // chance to hold on traces sigma would reject.
      Trace lt = gen_.local(b_.sigma, h, 2, hs, 0.5);
      DynValue r = gen_.result_of(t->b, hs);
      if (!n.spec->pre(x, h) || !n.spec->post(x, h, r, lt)) {
        ++st.vacuous;
        continue;
      }
      if (!enforced_locally(b_.sigma, h, lt)) fail(ob, describe(x, h, &r, &lt));
    }
  }

  void pi_sound() {
    auto& st = report_.obligations["pi_sound"];
    for (int i = 0; i < opt_.samples; ++i) {
      ++st.samples;
      Trace h = gen_.history(opt_.max_history);
      S s = replay(b_.mstate, h);
      if (!b_.mstate.abstracts(s, h)) {
        fail("pi_sound", "replayed state does not abstract h(newest first)=" + one_line(h));
        continue;
      }
      // One call per operation, so every op is probed on every history.
      Hints hs = hints_of_trace(h);
      bool decided = false;
      for (IoOp op : opt_.vocabulary.ops) {
        IoArgs a = gen_.args(op, hs);
        if (!b_.pi.decide(s, op, a)) continue;
        decided = true;
        if (!b_.sigma(h, Caller::Ctx, op, a)) {
          fail("pi_sound", "h(newest first)=" + one_line(h) + " call=" + std::string(op_name(op)) + " " + format_args(a));
        }
      }
      if (!decided) ++st.vacuous;
    }
  }

  const Bundle<S>& b_;
  SuiteOptions opt_;
  TraceGen gen_;
  SuiteReport report_;
};

}  // namespace detail

template <class S>
SuiteReport validate_bundle(const Bundle<S>& b, const SuiteOptions& opt = {}) {
  return detail::Suite<S>(b, opt).run();
}

}  // namespace seclink
