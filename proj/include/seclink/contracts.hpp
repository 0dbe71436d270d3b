#pragma once

// Check trees, two-phase effectful checks, and import/export across the
// program/context boundary.

#include <any>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seclink/comp.hpp"
#include "seclink/dyn.hpp"

namespace seclink {

template <class S>
using Check = std::function<bool(const DynValue& x, const S& s0, const DynValue& y, const S& s1)>;

/// Trace-level specification of a boundary arrow: pre over the history and
/// post over history, result and local trace.  Only used by the constraint
/// suite; the runtime never evaluates it.
struct ArrowSpec {
  std::function<bool(const DynValue& x, const Trace& h)> pre;
  std::function<bool(const DynValue& x, const Trace& h, const DynValue& r, const Trace& lt)> post;
};

enum class TreeKind { Leaf, Empty, Node };

template <class S>
struct CheckNode;
template <class S>
using CheckTree = std::shared_ptr<const CheckNode<S>>;

template <class S>
struct CheckNode {
  TreeKind kind = TreeKind::Leaf;
  std::string name;
  Check<S> ck;
  std::optional<ArrowSpec> spec;
  CheckTree<S> left;
  CheckTree<S> right;
};

template <class S>
CheckTree<S> leaf() {
  return std::make_shared<const CheckNode<S>>(CheckNode<S>{TreeKind::Leaf, {}, {}, {}, nullptr, nullptr});
}

template <class S>
CheckTree<S> empty_node(CheckTree<S> l, CheckTree<S> r) {
  return std::make_shared<const CheckNode<S>>(
      CheckNode<S>{TreeKind::Empty, {}, {}, {}, std::move(l), std::move(r)});
}

template <class S>
CheckTree<S> check_node(std::string name, Check<S> ck, CheckTree<S> l, CheckTree<S> r,
                        std::optional<ArrowSpec> spec = std::nullopt) {
  return std::make_shared<const CheckNode<S>>(
      CheckNode<S>{TreeKind::Node, std::move(name), std::move(ck), std::move(spec), std::move(l), std::move(r)});
}

// Effectful checks.  Phase 1 captures s0 and hands back phase 2, which
// captures s1 and decides.  Neither phase emits events.

struct EffVerdict {
  std::any s1;
  bool ok = false;
};

struct EffPhase {
  std::any s0;
  std::function<Comp<EffVerdict>(const DynValue& y)> finish;
};

using EffCheck = std::function<Comp<EffPhase>(const DynValue& x)>;

/// Names of checks that returned false, in order.  Diagnostics only.
using CheckLog = std::shared_ptr<std::vector<std::string>>;

template <class S>
EffCheck make_check_eff(Check<S> ck) {
  return [ck](const DynValue& x) {
    return fmap(get_mstate<S>(), [ck, x](const S& s0) {
      EffPhase p;
      p.s0 = s0;
      p.finish = [ck, x, s0](const DynValue& y) {
        return fmap(get_mstate<S>(), [ck, x, s0, y](const S& s1) { return EffVerdict{s1, ck(x, s0, y, s1)}; });
      };
      return p;
    });
  };
}

struct EffCheckNode;
using EffCheckTree = std::shared_ptr<const EffCheckNode>;

struct EffCheckNode {
  TreeKind kind = TreeKind::Leaf;
  std::string name;
  EffCheck eff;
  CheckLog log;
  EffCheckTree left;
  EffCheckTree right;
};

template <class S>
EffCheckTree make_checks_eff(const CheckTree<S>& t, CheckLog log = nullptr) {
  if (!t) throw std::invalid_argument("null check tree");
  auto n = std::make_shared<EffCheckNode>();
  n->kind = t->kind;
  n->name = t->name;
  n->log = log;
  if (t->kind == TreeKind::Node) n->eff = make_check_eff<S>(t->ck);
  if (t->kind != TreeKind::Leaf) {
    n->left = make_checks_eff<S>(t->left, log);
    n->right = make_checks_eff<S>(t->right, log);
  }
  return n;
}

/// Thrown when a check tree does not mirror its type.  This is a bug in the
/// interface, not a runtime contract failure.
class ShapeError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Leaf at base types, EmptyNode at products and sums, Node or EmptyNode at
/// arrows.
void check_shape(const Type& t, const EffCheckTree& cks);

template <class S>
void check_shape(const Type& t, const CheckTree<S>& cks) {
  check_shape(t, make_checks_eff<S>(cks));
}

/// Calls `f` only if the check passes on (x, ()); otherwise returns
/// Contract_failure without running anything.
Closure enforce_pre(EffCheck ck, std::string name, CheckLog log, Closure f);

/// Runs phase 1, then `f`, then phase 2 on f's result; on a false verdict
/// the result is replaced by Contract_failure.
Closure enforce_post(EffCheck ck, std::string name, CheckLog log, Closure f);

/// Context value -> program value.  Arrows are wrapped so that arguments
/// are exported and results imported, and Node checks are enforced as
/// post-conditions.
Either<DynValue> import_value(const Type& t, const EffCheckTree& cks, const DynValue& v);

/// Program value -> context value.  Arrows are wrapped so that arguments
/// are imported and results exported, and Node checks are enforced as
/// pre-conditions.
DynValue export_value(const Type& t, const EffCheckTree& cks, const DynValue& v);

}  // namespace seclink
