#pragma once

// Interfaces, compilation, linking (both directions) and back-translation.

#include <functional>
#include <string>
#include <utility>

#include "seclink/contracts.hpp"
#include "seclink/interpreter.hpp"
#include "seclink/monitor.hpp"
#include "seclink/traces.hpp"

namespace seclink {

/// Result of a whole program whose context was rejected at import time.
inline constexpr int kRejectedContext = -1;

/// Optional hooks that record which mechanism fired during a run.
struct Diagnostics {
  CheckLog checks;
  DenialLog denials;
};

template <class S>
struct SourceInterface {
  std::string name;
  Type ctype;
  PolicySpec sigma;
  Policy<S> pi;
  CheckTree<S> cks;
  PostCond psi;
  MStateDesc<S> mstate;
  Diagnostics diag;
};

template <class S>
struct TargetInterface {
  std::string name;
  Type ctype;
  PolicySpec sigma;
  Policy<S> pi;
  MStateDesc<S> mstate;
  Diagnostics diag;
};

/// Program side: receives the imported (contract-wrapped) context.
using SourceProg = std::function<Comp<int>(const DynValue& ctx)>;
/// Compiled program: receives the raw context value.
using TargetProg = std::function<Comp<int>(const DynValue& ctx)>;
/// Untrusted context: only ever sees the secure IO library.
using TargetCtx = std::function<DynValue(const SecureIoLib&)>;
/// Source-level context: also receives the effectful checks.
using SourceCtx = std::function<Either<DynValue>(const SecureIoLib&, const EffCheckTree&)>;
using Whole = Comp<int>;

template <class S>
TargetInterface<S> compile_interface(const SourceInterface<S>& I) {
  return TargetInterface<S>{I.name, I.ctype, I.sigma, I.pi, I.mstate, I.diag};
}

template <class S>
TargetProg compile_prog(const SourceInterface<S>& I, SourceProg P) {
  return [I, P = std::move(P)](const DynValue& c) -> Comp<int> {
    Either<DynValue> imported = import_value(I.ctype, make_checks_eff<S>(I.cks, I.diag.checks), c);
    if (imported.is_inr()) return ret(kRejectedContext);
    return P(imported.left());
  };
}

template <class S>
Whole link_target(const TargetInterface<S>& I, const TargetProg& P, const TargetCtx& C) {
  return P(C(enforce_policy(I.pi, I.diag.denials)));
}

template <class S>
std::pair<PostCond, Whole> link_source(const SourceInterface<S>& I, const SourceProg& P, const SourceCtx& C) {
  Either<DynValue> c = C(enforce_policy(I.pi, I.diag.denials), make_checks_eff<S>(I.cks, I.diag.checks));
  if (c.is_inr()) return {I.psi, ret(kRejectedContext)};
  return {I.psi, P(c.left())};
}

template <class S>
SourceCtx back_translate_ctx(const SourceInterface<S>& I, TargetCtx C) {
  return [ctype = I.ctype, C = std::move(C)](const SecureIoLib& lib, const EffCheckTree& cks) {
    return import_value(ctype, cks, C(lib));
  };
}

template <class S>
RunResult<int> run_whole(const Whole& w, World world, const MStateDesc<S>& desc, const InterpOptions& opt = {}) {
  return interpret(w, std::move(world), erase(desc), opt);
}

// Context-first linking: the program is a library exported to a context
// that holds initial control.

template <class S>
struct DualInterface {
  std::string name;
  Type ptype;
  PolicySpec sigma;
  Policy<S> pi;
  CheckTree<S> cks;
  MStateDesc<S> mstate;
  Diagnostics diag;
};

/// The program is a (strongly specified) library value.
using DualSourceProg = DynValue;
using DualTargetCtx = std::function<Comp<int>(const DynValue& prog, const SecureIoLib&)>;
using DualSourceCtx = std::function<Comp<int>(const DynValue& prog, const SecureIoLib&, const EffCheckTree&)>;

template <class S>
DynValue compile_prog_dual(const DualInterface<S>& I, const DualSourceProg& P) {
  return export_value(I.ptype, make_checks_eff<S>(I.cks, I.diag.checks), P);
}

template <class S>
Whole link_target_dual(const DualInterface<S>& I, const DynValue& P, const DualTargetCtx& C) {
  return C(P, enforce_policy(I.pi, I.diag.denials));
}

template <class S>
std::pair<PolicySpec, Whole> link_source_dual(const DualInterface<S>& I, const DualSourceProg& P,
                                             const DualSourceCtx& C) {
  return {I.sigma, C(P, enforce_policy(I.pi, I.diag.denials), make_checks_eff<S>(I.cks, I.diag.checks))};
}

template <class S>
DualSourceCtx back_translate_dual(const DualInterface<S>& I, DualTargetCtx C) {
  return [ptype = I.ptype, C = std::move(C)](const DynValue& P, const SecureIoLib& lib, const EffCheckTree& cks) {
    return C(export_value(ptype, cks, P), lib);
  };
}

}  // namespace seclink
