#pragma once

// Conversions between native C++ values and DynValue, so program and
// hand-written context code can be written against ordinary types.

#include <cstdint>
#include <functional>
#include <utility>

#include "seclink/dyn.hpp"

namespace seclink {

/// A boundary function with native types: A -> either B err.
template <class A, class B>
using Fn = std::function<Comp<Either<B>>(const A&)>;

template <class T>
struct Boundary;

template <>
struct Boundary<Unit> {
  static Type desc() { return t_unit(); }
  static DynValue to_dyn(const Unit&) { return dyn_unit(); }
  static Unit from_dyn(const DynValue&) { return Unit{}; }
};

template <>
struct Boundary<std::int64_t> {
  static Type desc() { return t_int(); }
  static DynValue to_dyn(std::int64_t n) { return dyn_int(n); }
  static std::int64_t from_dyn(const DynValue& v) { return v.as_int(); }
};

template <>
struct Boundary<Bytes> {
  static Type desc() { return t_bytes(); }
  static DynValue to_dyn(const Bytes& b) { return dyn_bytes(b); }
  static Bytes from_dyn(const DynValue& v) { return v.as_bytes(); }
};

template <>
struct Boundary<Fd> {
  static Type desc() { return t_fd(); }
  static DynValue to_dyn(Fd fd) { return dyn_fd(fd); }
  static Fd from_dyn(const DynValue& v) { return v.as_fd(); }
};

template <>
struct Boundary<Err> {
  static Type desc() { return t_err(); }
  static DynValue to_dyn(const Err& e) { return dyn_err(e); }
  static Err from_dyn(const DynValue& v) { return v.as_err(); }
};

template <class A, class B>
struct Boundary<std::pair<A, B>> {
  static Type desc() { return t_pair(Boundary<A>::desc(), Boundary<B>::desc()); }
  static DynValue to_dyn(const std::pair<A, B>& p) {
    return dyn_pair(Boundary<A>::to_dyn(p.first), Boundary<B>::to_dyn(p.second));
  }
  static std::pair<A, B> from_dyn(const DynValue& v) {
    return {Boundary<A>::from_dyn(v.first()), Boundary<B>::from_dyn(v.second())};
  }
};

template <class B>
DynValue result_to_dyn(const Either<B>& r) {
  return r.is_inl() ? dyn_ok(Boundary<B>::to_dyn(r.left())) : dyn_fail(r.right());
}

template <class B>
Either<B> result_from_dyn(const DynValue& r) {
  if (r.is_inl()) return Either<B>::inl(Boundary<B>::from_dyn(r.payload()));
  if (r.is_inr() && r.payload().is_err()) return Either<B>::inr(r.payload().as_err());
  return Either<B>::inr(Err{Errc::invalid, "result shape"});
}

template <class A, class B>
struct Boundary<Fn<A, B>> {
  static Type desc() { return t_arrow(Boundary<A>::desc(), Boundary<B>::desc()); }
  static DynValue to_dyn(const Fn<A, B>& f) {
    return dyn_closure([f](const DynValue& x) {
      return fmap(f(Boundary<A>::from_dyn(x)), [](const Either<B>& r) { return result_to_dyn(r); });
    });
  }
  static Fn<A, B> from_dyn(const DynValue& v) {
    Closure c = v.closure();
    return [c](const A& a) {
      return fmap(c(Boundary<A>::to_dyn(a)), [](const DynValue& r) { return result_from_dyn<B>(r); });
    };
  }
};

template <class T>
DynValue to_dyn(const T& v) {
  return Boundary<T>::to_dyn(v);
}

template <class T>
T from_dyn(const DynValue& v) {
  return Boundary<T>::from_dyn(v);
}

}  // namespace seclink
