#include "seclink/dyn.hpp"

#include "seclink/traces.hpp"

namespace seclink {

namespace {

Type make(TypeDesc::Kind k, Type a = nullptr, Type b = nullptr) {
  return std::make_shared<const TypeDesc>(TypeDesc{k, std::move(a), std::move(b)});
}

}  // namespace

Type t_unit() { return make(TypeDesc::Kind::Unit); }
Type t_int() { return make(TypeDesc::Kind::Int); }
Type t_bytes() { return make(TypeDesc::Kind::Bytes); }
Type t_fd() { return make(TypeDesc::Kind::FileDescr); }
Type t_err() { return make(TypeDesc::Kind::Err); }
Type t_pair(Type a, Type b) { return make(TypeDesc::Kind::Pair, std::move(a), std::move(b)); }
Type t_either(Type a, Type b) { return make(TypeDesc::Kind::Either, std::move(a), std::move(b)); }
Type t_option(Type a) { return t_either(std::move(a), t_unit()); }
Type t_arrow(Type dom, Type cod) { return make(TypeDesc::Kind::Arrow, std::move(dom), std::move(cod)); }

bool same_type(const Type& x, const Type& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TypeDesc::Kind::Pair:
    case TypeDesc::Kind::Either:
    case TypeDesc::Kind::Arrow: return same_type(x->a, y->a) && same_type(x->b, y->b);
    default: return true;
  }
}

std::string type_to_string(const Type& t) {
  switch (t->kind) {
    case TypeDesc::Kind::Unit: return "unit";
    case TypeDesc::Kind::Int: return "int";
    case TypeDesc::Kind::Bytes: return "bytes";
    case TypeDesc::Kind::FileDescr: return "fd";
    case TypeDesc::Kind::Err: return "err";
    case TypeDesc::Kind::Pair: return "(" + type_to_string(t->a) + " * " + type_to_string(t->b) + ")";
    case TypeDesc::Kind::Either: return "(either " + type_to_string(t->a) + " " + type_to_string(t->b) + ")";
    case TypeDesc::Kind::Arrow:
      return "(" + type_to_string(t->a) + " -> either " + type_to_string(t->b) + " err)";
  }
  return "?";
}

bool operator==(const DynValue& x, const DynValue& y) {
  if (x.v.index() != y.v.index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const T& b = std::get<T>(y.v);
        if constexpr (std::is_same_v<T, DynPair>) {
          return *a.first == *b.first && *a.second == *b.second;
        } else if constexpr (std::is_same_v<T, DynEither>) {
          return a.left == b.left && *a.value == *b.value;
        } else if constexpr (std::is_same_v<T, DynClosure>) {
          return false;
        } else {
          return a == b;
        }
      },
      x.v);
}

DynValue dyn_unit() { return DynValue{Unit{}}; }
DynValue dyn_int(std::int64_t n) { return DynValue{n}; }
DynValue dyn_bytes(Bytes b) { return DynValue{std::move(b)}; }
DynValue dyn_fd(Fd fd) { return DynValue{fd}; }
DynValue dyn_err(Err e) { return DynValue{std::move(e)}; }
DynValue dyn_pair(DynValue a, DynValue b) {
  return DynValue{DynPair{std::make_shared<const DynValue>(std::move(a)), std::make_shared<const DynValue>(std::move(b))}};
}
DynValue dyn_inl(DynValue v) { return DynValue{DynEither{true, std::make_shared<const DynValue>(std::move(v))}}; }
DynValue dyn_inr(DynValue v) { return DynValue{DynEither{false, std::make_shared<const DynValue>(std::move(v))}}; }
DynValue dyn_closure(Closure f) { return DynValue{DynClosure{std::move(f)}}; }
DynValue dyn_ok(DynValue v) { return dyn_inl(std::move(v)); }
DynValue dyn_fail(Err e) { return dyn_inr(dyn_err(std::move(e))); }

bool typechecks(const DynValue& v, const Type& t) {
  switch (t->kind) {
    case TypeDesc::Kind::Unit: return v.is_unit();
    case TypeDesc::Kind::Int: return v.is_int();
    case TypeDesc::Kind::Bytes: return v.is_bytes();
    case TypeDesc::Kind::FileDescr: return v.is_fd();
    case TypeDesc::Kind::Err: return v.is_err();
    case TypeDesc::Kind::Pair: return v.is_pair() && typechecks(v.first(), t->a) && typechecks(v.second(), t->b);
    case TypeDesc::Kind::Either:
      return v.is_either() && typechecks(v.payload(), v.is_inl() ? t->a : t->b);
    case TypeDesc::Kind::Arrow: return v.is_closure() && static_cast<bool>(v.closure());
  }
  return false;
}

bool is_result_of(const DynValue& v, const Type& cod) {
  if (!v.is_either()) return false;
  return v.is_inl() ? typechecks(v.payload(), cod) : v.payload().is_err();
}

std::string dyn_to_string(const DynValue& v) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return "()";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(a);
        } else if constexpr (std::is_same_v<T, Bytes>) {
          return quote_bytes(a);
        } else if constexpr (std::is_same_v<T, Fd>) {
          return "fd " + std::to_string(a.value);
        } else if constexpr (std::is_same_v<T, Err>) {
          std::string s(errc_name(a.code));
          return a.provenance.empty() ? s : s + "[" + a.provenance + "]";
        } else if constexpr (std::is_same_v<T, DynPair>) {
          return "(" + dyn_to_string(*a.first) + ", " + dyn_to_string(*a.second) + ")";
        } else if constexpr (std::is_same_v<T, DynEither>) {
          return std::string(a.left ? "Inl " : "Inr ") + dyn_to_string(*a.value);
        } else {
          return "<closure>";
        }
      },
      v.v);
}

}  // namespace seclink
