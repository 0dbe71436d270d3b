#pragma once

// Runtime type descriptors and dynamic values for the program/context
// boundary.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "seclink/comp.hpp"

namespace seclink {

struct TypeDesc;
using Type = std::shared_ptr<const TypeDesc>;

struct TypeDesc {
  enum class Kind { Unit, Int, Bytes, FileDescr, Err, Pair, Either, Arrow };
  Kind kind = Kind::Unit;
  Type a;  // Pair first, Either left, Arrow domain
  Type b;  // Pair second, Either right, Arrow codomain (the error case is implicit)
};

Type t_unit();
Type t_int();
Type t_bytes();
Type t_fd();
Type t_err();
Type t_pair(Type a, Type b);
Type t_either(Type a, Type b);
Type t_option(Type a);  // either a unit
Type t_arrow(Type dom, Type cod);

bool same_type(const Type& x, const Type& y);
std::string type_to_string(const Type& t);

struct DynValue;
using DynPtr = std::shared_ptr<const DynValue>;

/// A boundary function.  The result is always `either cod err`.
using Closure = std::function<Comp<DynValue>(const DynValue&)>;

struct DynPair {
  DynPtr first;
  DynPtr second;
};

struct DynEither {
  bool left = true;
  DynPtr value;
};

struct DynClosure {
  Closure fn;
};

struct DynValue {
  std::variant<Unit, std::int64_t, Bytes, Fd, Err, DynPair, DynEither, DynClosure> v;

  bool is_unit() const { return std::holds_alternative<Unit>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_bytes() const { return std::holds_alternative<Bytes>(v); }
  bool is_fd() const { return std::holds_alternative<Fd>(v); }
  bool is_err() const { return std::holds_alternative<Err>(v); }
  bool is_pair() const { return std::holds_alternative<DynPair>(v); }
  bool is_either() const { return std::holds_alternative<DynEither>(v); }
  bool is_closure() const { return std::holds_alternative<DynClosure>(v); }

  std::int64_t as_int() const { return std::get<std::int64_t>(v); }
  const Bytes& as_bytes() const { return std::get<Bytes>(v); }
  Fd as_fd() const { return std::get<Fd>(v); }
  const Err& as_err() const { return std::get<Err>(v); }
  const DynValue& first() const { return *std::get<DynPair>(v).first; }
  const DynValue& second() const { return *std::get<DynPair>(v).second; }
  bool is_inl() const { return is_either() && std::get<DynEither>(v).left; }
  bool is_inr() const { return is_either() && !std::get<DynEither>(v).left; }
  const DynValue& payload() const { return *std::get<DynEither>(v).value; }
  const Closure& closure() const { return std::get<DynClosure>(v).fn; }
};

/// Structural equality.  Closures are never equal to anything.
bool operator==(const DynValue& x, const DynValue& y);

DynValue dyn_unit();
DynValue dyn_int(std::int64_t n);
DynValue dyn_bytes(Bytes b);
DynValue dyn_fd(Fd fd);
DynValue dyn_err(Err e);
DynValue dyn_pair(DynValue a, DynValue b);
DynValue dyn_inl(DynValue v);
DynValue dyn_inr(DynValue v);
DynValue dyn_closure(Closure f);

/// `Inl v` / `Inr err` at a boundary result.
DynValue dyn_ok(DynValue v);
DynValue dyn_fail(Err e);

/// Does `v` inhabit `t`?  Arrows are checked only up to being closures;
/// their behavior is checked when they are called.
bool typechecks(const DynValue& v, const Type& t);

/// Is `v` a well-formed boundary result for codomain `cod`?
bool is_result_of(const DynValue& v, const Type& cod);

std::string dyn_to_string(const DynValue& v);

}  // namespace seclink
