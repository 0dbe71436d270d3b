#include "seclink/contracts.hpp"

namespace seclink {

namespace {

using K = TypeDesc::Kind;

bool is_base(K k) { return k != K::Pair && k != K::Either && k != K::Arrow; }

Err shape_failure(const char* where) { return Err::contract_failure(std::string("import:") + where); }

// A raw boundary result from the context, imported at codomain `cod`.
DynValue import_result(const Type& cod, const EffCheckTree& cks, const DynValue& r) {
  if (!r.is_either()) return dyn_fail(shape_failure("result"));
  if (r.is_inr()) return r.payload().is_err() ? r : dyn_fail(shape_failure("result"));
  Either<DynValue> y = import_value(cod, cks, r.payload());
  return y.is_inl() ? dyn_ok(y.left()) : dyn_fail(y.right());
}

DynValue export_result(const Type& cod, const EffCheckTree& cks, const DynValue& r) {
  if (r.is_inl()) return dyn_ok(export_value(cod, cks, r.payload()));
  return r;
}

}  // namespace

void check_shape(const Type& t, const EffCheckTree& cks) {
  if (!cks) throw ShapeError("missing check tree at " + type_to_string(t));
  if (is_base(t->kind)) {
    if (cks->kind != TreeKind::Leaf) throw ShapeError("expected Leaf at " + type_to_string(t));
    return;
  }
  if (t->kind != K::Arrow && cks->kind != TreeKind::Empty) {
    throw ShapeError("expected EmptyNode at " + type_to_string(t));
  }
  if (t->kind == K::Arrow && cks->kind == TreeKind::Leaf) {
    throw ShapeError("expected Node or EmptyNode at " + type_to_string(t));
  }
  check_shape(t->a, cks->left);
  check_shape(t->b, cks->right);
}

Closure enforce_pre(EffCheck ck, std::string name, CheckLog log, Closure f) {
  return [ck = std::move(ck), name = std::move(name), log = std::move(log), f = std::move(f)](const DynValue& x) {
    return and_then(ck(x), [name, log, f, x](const EffPhase& p) {
      return and_then(p.finish(dyn_unit()), [name, log, f, x](const EffVerdict& v) {
        if (v.ok) return f(x);
        if (log) log->push_back("pre:" + name);
        return ret(dyn_fail(Err::contract_failure("pre:" + name)));
      });
    });
  };
}

Closure enforce_post(EffCheck ck, std::string name, CheckLog log, Closure f) {
  return [ck = std::move(ck), name = std::move(name), log = std::move(log), f = std::move(f)](const DynValue& x) {
    return and_then(ck(x), [name, log, f, x](const EffPhase& p) {
      return and_then(f(x), [name, log, p](const DynValue& r) {
        return fmap(p.finish(r), [name, log, r](const EffVerdict& v) {
          if (v.ok) return r;
          if (log) log->push_back("post:" + name);
          return dyn_fail(Err::contract_failure("post:" + name));
        });
      });
    });
  };
}

Either<DynValue> import_value(const Type& t, const EffCheckTree& cks, const DynValue& v) {
  check_shape(t, cks);
  switch (t->kind) {
    case K::Pair: {
      if (!v.is_pair()) return Either<DynValue>::inr(shape_failure("pair"));
      auto a = import_value(t->a, cks->left, v.first());
      if (a.is_inr()) return a;
      auto b = import_value(t->b, cks->right, v.second());
      if (b.is_inr()) return b;
      return Either<DynValue>::inl(dyn_pair(a.left(), b.left()));
    }
    case K::Either: {
      if (!v.is_either()) return Either<DynValue>::inr(shape_failure("either"));
      bool left = v.is_inl();
      auto x = import_value(left ? t->a : t->b, left ? cks->left : cks->right, v.payload());
      if (x.is_inr()) return x;
      return Either<DynValue>::inl(left ? dyn_inl(x.left()) : dyn_inr(x.left()));
    }
    case K::Arrow: {
      if (!v.is_closure() || !v.closure()) return Either<DynValue>::inr(shape_failure("arrow"));
      Type dom = t->a;
      Type cod = t->b;
      EffCheckTree l = cks->left;
      EffCheckTree r = cks->right;
      Closure raw = [f = v.closure(), dom, cod, l, r](const DynValue& x) {
        return fmap(f(export_value(dom, l, x)), [cod, r](const DynValue& res) { return import_result(cod, r, res); });
      };
      if (cks->kind == TreeKind::Node) raw = enforce_post(cks->eff, cks->name, cks->log, std::move(raw));
      return Either<DynValue>::inl(dyn_closure(std::move(raw)));
    }
    default:
      if (!typechecks(v, t)) return Either<DynValue>::inr(shape_failure(type_to_string(t).c_str()));
      return Either<DynValue>::inl(v);
  }
}

DynValue export_value(const Type& t, const EffCheckTree& cks, const DynValue& v) {
  check_shape(t, cks);
  switch (t->kind) {
    case K::Pair:
      return dyn_pair(export_value(t->a, cks->left, v.first()), export_value(t->b, cks->right, v.second()));
    case K::Either:
      return v.is_inl() ? dyn_inl(export_value(t->a, cks->left, v.payload()))
                        : dyn_inr(export_value(t->b, cks->right, v.payload()));
    case K::Arrow: {
      Type dom = t->a;
      Type cod = t->b;
      EffCheckTree l = cks->left;
      EffCheckTree r = cks->right;
      Closure body = [f = v.closure(), cod, r](const DynValue& x) {
        return fmap(f(x), [cod, r](const DynValue& res) { return export_result(cod, r, res); });
      };
      if (cks->kind == TreeKind::Node) body = enforce_pre(cks->eff, cks->name, cks->log, std::move(body));
      return dyn_closure([dom, l, body](const DynValue& x) -> Comp<DynValue> {
        Either<DynValue> ix = import_value(dom, l, x);
        if (ix.is_inr()) return ret(dyn_fail(ix.right()));
        return body(ix.left());
      });
    }
    default: return v;
  }
}

}  // namespace seclink
