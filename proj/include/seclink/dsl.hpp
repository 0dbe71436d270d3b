#pragma once

// A small simply-typed lambda calculus for writing untrusted contexts.
//
//   e ::= x | n | "s" | () | \x:T. e | e e | let x = e in e
//       | (e, e) | fst e | snd e | inl e | inr e | (e : T)
//       | case e of Inl x => e | Inr y => e | io OP e
//   T ::= unit | int | bytes | fd | err | T * T | either T T | T -> T
//
// `*` binds tighter than `->`; both associate to the right.  Comments run
// from `#` to the end of the line.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seclink/dyn.hpp"
#include "seclink/linker.hpp"

namespace seclink::dsl {

struct CType;
using CTypePtr = std::shared_ptr<const CType>;

struct CType {
  enum class Kind { Unit, Int, Bytes, Fd, Err, Pair, Either, Arrow };
  Kind kind = Kind::Unit;
  CTypePtr a;
  CTypePtr b;
};

CTypePtr c_unit();
CTypePtr c_int();
CTypePtr c_bytes();
CTypePtr c_fd();
CTypePtr c_err();
CTypePtr c_pair(CTypePtr a, CTypePtr b);
CTypePtr c_either(CTypePtr a, CTypePtr b);
CTypePtr c_arrow(CTypePtr a, CTypePtr b);

bool type_equal(const CTypePtr& x, const CTypePtr& y);
std::string show_type(const CTypePtr& t);

struct Pos {
  int line = 1;
  int col = 1;
};

enum class ExprKind { Var, Lam, App, Let, Pair, Fst, Snd, Inl, Inr, Case, Int, Bytes, Unit, Io, Ann };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Unit;
  std::string name;   // Var, Lam/Let binder, Case left binder, Io op name
  std::string name2;  // Case right binder
  CTypePtr type;      // Lam parameter type, Ann type
  std::int64_t ival = 0;
  std::string sval;
  std::vector<ExprPtr> kids;
  Pos pos;
};

ExprPtr e_var(std::string x);
ExprPtr e_lam(std::string x, CTypePtr t, ExprPtr body);
ExprPtr e_app(ExprPtr f, ExprPtr a);
ExprPtr e_let(std::string x, ExprPtr bound, ExprPtr body);
ExprPtr e_pair(ExprPtr a, ExprPtr b);
ExprPtr e_fst(ExprPtr a);
ExprPtr e_snd(ExprPtr a);
ExprPtr e_inl(ExprPtr a);
ExprPtr e_inr(ExprPtr a);
ExprPtr e_case(ExprPtr scrut, std::string x, ExprPtr l, std::string y, ExprPtr r);
ExprPtr e_int(std::int64_t n);
ExprPtr e_bytes(std::string s);
ExprPtr e_unit();
ExprPtr e_io(std::string op, ExprPtr arg);
ExprPtr e_ann(ExprPtr e, CTypePtr t);

/// Structural equality ignoring source positions.
bool expr_equal(const ExprPtr& x, const ExprPtr& y);

/// Fully parenthesised concrete syntax that parses back to the same tree.
std::string pretty(const ExprPtr& e);

struct Diag {
  Pos pos;
  std::string message;
  std::string to_string() const;
};

template <class T>
struct Result {
  std::optional<T> value;
  Diag error;
  bool ok() const { return value.has_value(); }
};

Result<ExprPtr> parse(const std::string& text);
Result<CTypePtr> parse_type(const std::string& text);

/// Pure helpers and the standard descriptors (stdin, stdout, stderr)
/// available to every context, with their types.
const std::map<std::string, CTypePtr>& primitives();

/// Argument type of `io OP`; its result is `either R err`.  Select is not
/// offered to contexts.
std::optional<std::pair<CTypePtr, CTypePtr>> io_signature(const std::string& op);

struct TypedExpr {
  ExprPtr expr;
  CTypePtr type;
};

/// Bidirectional check of a closed term against `expected`.
Result<TypedExpr> typecheck(const ExprPtr& e, const CTypePtr& expected);

/// Type synthesis for closed terms; fails on bare inl/inr.
Result<CTypePtr> synthesize(const ExprPtr& e);

/// Syntactic values: literals, variables, lambdas, and pairs, injections,
/// projections, annotations and lets built from them.  Only values are
/// accepted as top-level contexts, so building a context performs no IO.
bool is_value(const ExprPtr& e);

// Boundary view of DSL types.  A curried chain
//   A1 -> ... -> An -> either R err
// crosses the boundary as Arrow(A1 * (... * An), R).
std::optional<Type> to_boundary(const CTypePtr& t);
CTypePtr from_boundary(const Type& t);

DynValue dsl_to_boundary(const DynValue& v, const CTypePtr& t);
DynValue boundary_to_dsl(const DynValue& v, const CTypePtr& t);

/// Evaluates a typed closed term with IO routed through `lib`.
Comp<DynValue> evaluate(const ExprPtr& e, const SecureIoLib& lib);

/// Parses, checks against `ctype` and translates a context.  The DSL type is
/// read off the term's leading lambdas (or its outer annotation).
Result<TargetCtx> compile_context(const std::string& text, const Type& ctype);

/// Same, for a context that receives the program as a library: the term has
/// type `P -> either int err`; an error result becomes kRejectedContext.
Result<DualTargetCtx> compile_dual_context(const std::string& text, const Type& ptype);

}  // namespace seclink::dsl
