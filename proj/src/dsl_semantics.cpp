#include <map>
#include <stdexcept>

#include "seclink/demos/http.hpp"
#include "seclink/dsl.hpp"

namespace seclink::dsl {

const std::map<std::string, CTypePtr>& primitives() {
  static const std::map<std::string, CTypePtr> prims = {
      {"concat", c_arrow(c_bytes(), c_arrow(c_bytes(), c_bytes()))},
      {"request_path", c_arrow(c_bytes(), c_bytes())},
      {"http_response", c_arrow(c_int(), c_arrow(c_bytes(), c_bytes()))},
      {"int_to_bytes", c_arrow(c_int(), c_bytes())},
      {"stdin", c_fd()},
      {"stdout", c_fd()},
      {"stderr", c_fd()},
  };
  return prims;
}

std::optional<std::pair<CTypePtr, CTypePtr>> io_signature(const std::string& op) {
  auto parsed = op_from_name(op);
  if (!parsed) return std::nullopt;
  switch (*parsed) {
    case IoOp::Openfile: return std::pair{c_pair(c_bytes(), c_pair(c_int(), c_int())), c_fd()};
    case IoOp::Read: return std::pair{c_fd(), c_bytes()};
    case IoOp::Write: return std::pair{c_pair(c_fd(), c_bytes()), c_unit()};
    case IoOp::Close:
    case IoOp::SetNonblock: return std::pair{c_fd(), c_unit()};
    case IoOp::Socket: return std::pair{c_unit(), c_fd()};
    case IoOp::Setsockopt:
    case IoOp::Bind: return std::pair{c_pair(c_fd(), c_pair(c_bytes(), c_int())), c_unit()};
    case IoOp::Listen: return std::pair{c_pair(c_fd(), c_int()), c_unit()};
    case IoOp::Accept: return std::pair{c_fd(), c_fd()};
    case IoOp::Select: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

struct TypeError {
  Diag diag;
};

struct Scope {
  std::string name;
  CTypePtr type;
  const Scope* up;
};

class Checker {
 public:
  CTypePtr synth(const ExprPtr& e, const Scope* env) {
    const auto& k = e->kids;
    switch (e->kind) {
      case ExprKind::Var: return lookup(e, env);
      case ExprKind::Int: return c_int();
      case ExprKind::Bytes: return c_bytes();
      case ExprKind::Unit: return c_unit();
      case ExprKind::Lam: {
        Frame f(this, "body of \\" + e->name);
        Scope s{e->name, e->type, env};
        return c_arrow(e->type, synth(k[0], &s));
      }
      case ExprKind::App: {
        CTypePtr ft;
        {
          Frame f(this, "function of application");
          ft = synth(k[0], env);
        }
        if (ft->kind != CType::Kind::Arrow) error(e, "applying a value of type " + show_type(ft));
        Frame f(this, "argument of application");
        check(k[1], ft->a, env);
        return ft->b;
      }
      case ExprKind::Let: {
        CTypePtr bt;
        {
          Frame f(this, "bound expression of let " + e->name);
          bt = synth(k[0], env);
        }
        Frame f(this, "body of let " + e->name);
        Scope s{e->name, bt, env};
        return synth(k[1], &s);
      }
      case ExprKind::Pair: {
        CTypePtr a;
        {
          Frame f(this, "first component");
          a = synth(k[0], env);
        }
        Frame f(this, "second component");
        return c_pair(a, synth(k[1], env));
      }
      case ExprKind::Fst:
      case ExprKind::Snd: {
        Frame f(this, e->kind == ExprKind::Fst ? "argument of fst" : "argument of snd");
        CTypePtr t = synth(k[0], env);
        if (t->kind != CType::Kind::Pair) error(e, "projection from non-pair type " + show_type(t));
        return e->kind == ExprKind::Fst ? t->a : t->b;
      }
      case ExprKind::Inl:
      case ExprKind::Inr: error(e, "cannot infer the type of an injection; add an annotation");
      case ExprKind::Case: {
        CTypePtr st = scrutinee(e, env);
        CTypePtr lt;
        {
          Frame f(this, "Inl branch");
          Scope s{e->name, st->a, env};
          lt = synth(k[1], &s);
        }
        Frame f(this, "Inr branch");
        Scope s{e->name2, st->b, env};
        check(k[2], lt, &s);
        return lt;
      }
      case ExprKind::Io: {
        auto sig = io_signature(e->name);
        if (!sig) error(e, "operation " + e->name + " is not available to contexts");
        Frame f(this, "argument of io " + e->name);
        check(k[0], sig->first, env);
        return c_either(sig->second, c_err());
      }
      case ExprKind::Ann: {
        Frame f(this, "annotated expression");
        check(k[0], e->type, env);
        return e->type;
      }
    }
    error(e, "unknown expression");
  }

  void check(const ExprPtr& e, const CTypePtr& t, const Scope* env) {
    const auto& k = e->kids;
    switch (e->kind) {
      case ExprKind::Lam: {
        if (t->kind != CType::Kind::Arrow) error(e, "lambda checked against non-function type " + show_type(t));
        if (!type_equal(e->type, t->a)) {
          error(e, "parameter " + e->name + " has type " + show_type(e->type) + " but " + show_type(t->a) +
                       " is expected");
        }
        Frame f(this, "body of \\" + e->name);
        Scope s{e->name, e->type, env};
        check(k[0], t->b, &s);
        return;
      }
      case ExprKind::Inl:
      case ExprKind::Inr: {
        if (t->kind != CType::Kind::Either) error(e, "injection checked against non-either type " + show_type(t));
        Frame f(this, e->kind == ExprKind::Inl ? "argument of inl" : "argument of inr");
        check(k[0], e->kind == ExprKind::Inl ? t->a : t->b, env);
        return;
      }
      case ExprKind::Pair: {
        if (t->kind != CType::Kind::Pair) error(e, "pair checked against non-pair type " + show_type(t));
        {
          Frame f(this, "first component");
          check(k[0], t->a, env);
        }
        Frame f(this, "second component");
        check(k[1], t->b, env);
        return;
      }
      case ExprKind::Let: {
        CTypePtr bt;
        {
          Frame f(this, "bound expression of let " + e->name);
          bt = synth(k[0], env);
        }
        Frame f(this, "body of let " + e->name);
        Scope s{e->name, bt, env};
        check(k[1], t, &s);
        return;
      }
      case ExprKind::Case: {
        CTypePtr st = scrutinee(e, env);
        {
          Frame f(this, "Inl branch");
          Scope s{e->name, st->a, env};
          check(k[1], t, &s);
        }
        Frame f(this, "Inr branch");
        Scope s{e->name2, st->b, env};
        check(k[2], t, &s);
        return;
      }
      default: {
        CTypePtr got = synth(e, env);
        if (!type_equal(got, t)) error(e, "expected " + show_type(t) + " but found " + show_type(got));
      }
    }
  }

 private:
  struct Frame {
    Frame(Checker* c, std::string what) : c_(c) { c_->path_.push_back(std::move(what)); }
    ~Frame() { c_->path_.pop_back(); }
    Checker* c_;
  };

  CTypePtr scrutinee(const ExprPtr& e, const Scope* env) {
    Frame f(this, "scrutinee of case");
    CTypePtr st = synth(e->kids[0], env);
    if (st->kind != CType::Kind::Either) error(e->kids[0], "case on non-either type " + show_type(st));
    return st;
  }

  CTypePtr lookup(const ExprPtr& e, const Scope* env) {
    for (const Scope* s = env; s; s = s->up) {
      if (s->name == e->name) return s->type;
    }
    auto it = primitives().find(e->name);
    if (it != primitives().end()) return it->second;
    error(e, "unbound variable " + e->name);
  }

  [[noreturn]] void error(const ExprPtr& e, const std::string& msg) {
    std::string where;
    for (const auto& p : path_) where += (where.empty() ? "" : " > ") + p;
    throw TypeError{Diag{e->pos, where.empty() ? msg : msg + " (in " + where + ")"}};
  }

  std::vector<std::string> path_;
};

}  // namespace

Result<TypedExpr> typecheck(const ExprPtr& e, const CTypePtr& expected) {
  try {
    Checker().check(e, expected, nullptr);
    return {TypedExpr{e, expected}, {}};
  } catch (const TypeError& err) {
    return {std::nullopt, err.diag};
  }
}

Result<CTypePtr> synthesize(const ExprPtr& e) {
  try {
    return {Checker().synth(e, nullptr), {}};
  } catch (const TypeError& err) {
    return {std::nullopt, err.diag};
  }
}

bool is_value(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var:
    case ExprKind::Int:
    case ExprKind::Bytes:
    case ExprKind::Unit:
    case ExprKind::Lam: return true;
    case ExprKind::Pair:
    case ExprKind::Let: return is_value(e->kids[0]) && is_value(e->kids[1]);
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::Inl:
    case ExprKind::Inr:
    case ExprKind::Ann: return is_value(e->kids[0]);
    default: return false;
  }
}

// Boundary view.

namespace {

struct ArrowChain {
  std::vector<CTypePtr> params;
  CTypePtr result;  // R in `either R err`
};

std::optional<ArrowChain> chain(const CTypePtr& t) {
  ArrowChain c;
  CTypePtr cur = t;
  while (cur->kind == CType::Kind::Arrow) {
    c.params.push_back(cur->a);
    cur = cur->b;
  }
  if (cur->kind != CType::Kind::Either || cur->b->kind != CType::Kind::Err) return std::nullopt;
  c.result = cur->a;
  return c;
}

DynValue tuple(const std::vector<DynValue>& xs) {
  DynValue acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = dyn_pair(xs[i], acc);
  return acc;
}

std::vector<DynValue> untuple(const DynValue& x, std::size_t n) {
  std::vector<DynValue> out;
  const DynValue* cur = &x;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.push_back(cur->first());
    cur = &cur->second();
  }
  out.push_back(*cur);
  return out;
}

}  // namespace

std::optional<Type> to_boundary(const CTypePtr& t) {
  switch (t->kind) {
    case CType::Kind::Unit: return t_unit();
    case CType::Kind::Int: return t_int();
    case CType::Kind::Bytes: return t_bytes();
    case CType::Kind::Fd: return t_fd();
    case CType::Kind::Err: return t_err();
    case CType::Kind::Pair:
    case CType::Kind::Either: {
      auto a = to_boundary(t->a);
      auto b = to_boundary(t->b);
      if (!a || !b) return std::nullopt;
      return t->kind == CType::Kind::Pair ? t_pair(*a, *b) : t_either(*a, *b);
    }
    case CType::Kind::Arrow: {
      auto c = chain(t);
      if (!c) return std::nullopt;
      auto r = to_boundary(c->result);
      if (!r) return std::nullopt;
      std::optional<Type> dom;
      for (auto it = c->params.rbegin(); it != c->params.rend(); ++it) {
        auto p = to_boundary(*it);
        if (!p) return std::nullopt;
        dom = dom ? t_pair(*p, *dom) : *p;
      }
      return t_arrow(*dom, *r);
    }
  }
  return std::nullopt;
}

CTypePtr from_boundary(const Type& t) {
  switch (t->kind) {
    case TypeDesc::Kind::Unit: return c_unit();
    case TypeDesc::Kind::Int: return c_int();
    case TypeDesc::Kind::Bytes: return c_bytes();
    case TypeDesc::Kind::FileDescr: return c_fd();
    case TypeDesc::Kind::Err: return c_err();
    case TypeDesc::Kind::Pair: return c_pair(from_boundary(t->a), from_boundary(t->b));
    case TypeDesc::Kind::Either: return c_either(from_boundary(t->a), from_boundary(t->b));
    case TypeDesc::Kind::Arrow: return c_arrow(from_boundary(t->a), c_either(from_boundary(t->b), c_err()));
  }
  return c_unit();
}

DynValue dsl_to_boundary(const DynValue& v, const CTypePtr& t) {
  switch (t->kind) {
    case CType::Kind::Pair: return dyn_pair(dsl_to_boundary(v.first(), t->a), dsl_to_boundary(v.second(), t->b));
    case CType::Kind::Either:
      return v.is_inl() ? dyn_inl(dsl_to_boundary(v.payload(), t->a)) : dyn_inr(dsl_to_boundary(v.payload(), t->b));
    case CType::Kind::Arrow: {
      ArrowChain c = *chain(t);
      Closure f = v.closure();
      return dyn_closure([f, c](const DynValue& x) {
        std::vector<DynValue> args = untuple(x, c.params.size());
        Comp<DynValue> acc = f(boundary_to_dsl(args[0], c.params[0]));
        for (std::size_t i = 1; i < args.size(); ++i) {
          DynValue a = boundary_to_dsl(args[i], c.params[i]);
          acc = and_then(acc, [a](const DynValue& g) { return g.closure()(a); });
        }
        CTypePtr r = c.result;
        return fmap(acc, [r](const DynValue& res) { return res.is_inl() ? dyn_ok(dsl_to_boundary(res.payload(), r)) : res; });
      });
    }
    default: return v;
  }
}

namespace {

DynValue curry(const Closure& f, const ArrowChain& c, std::vector<DynValue> acc) {
  return dyn_closure([f, c, acc](const DynValue& a) -> Comp<DynValue> {
    std::vector<DynValue> got = acc;
    got.push_back(a);
    if (got.size() < c.params.size()) return ret(curry(f, c, got));
    std::vector<DynValue> bnd;
    for (std::size_t i = 0; i < got.size(); ++i) bnd.push_back(dsl_to_boundary(got[i], c.params[i]));
    CTypePtr r = c.result;
    return fmap(f(tuple(bnd)), [r](const DynValue& res) {
      return res.is_inl() ? dyn_inl(boundary_to_dsl(res.payload(), r)) : res;
    });
  });
}

}  // namespace

DynValue boundary_to_dsl(const DynValue& v, const CTypePtr& t) {
  switch (t->kind) {
    case CType::Kind::Pair: return dyn_pair(boundary_to_dsl(v.first(), t->a), boundary_to_dsl(v.second(), t->b));
    case CType::Kind::Either:
      return v.is_inl() ? dyn_inl(boundary_to_dsl(v.payload(), t->a)) : dyn_inr(boundary_to_dsl(v.payload(), t->b));
    case CType::Kind::Arrow: return curry(v.closure(), *chain(t), {});
    default: return v;
  }
}

// Evaluation.

namespace {

struct Env {
  std::string name;
  DynValue value;
  std::shared_ptr<const Env> up;
};
using EnvPtr = std::shared_ptr<const Env>;

EnvPtr bind_var(const std::string& x, DynValue v, EnvPtr up) {
  return std::make_shared<const Env>(Env{x, std::move(v), std::move(up)});
}

DynValue pure_fn(std::function<DynValue(const DynValue&)> f) {
  return dyn_closure([f](const DynValue& x) { return ret(f(x)); });
}

DynValue primitive(const std::string& name) {
  if (name == "concat") {
    return pure_fn([](const DynValue& a) {
      return pure_fn([a](const DynValue& b) { return dyn_bytes(a.as_bytes() + b.as_bytes()); });
    });
  }
  if (name == "request_path") {
    return pure_fn([](const DynValue& r) { return dyn_bytes(http::request_path(r.as_bytes())); });
  }
  if (name == "http_response") {
    return pure_fn([](const DynValue& code) {
      return pure_fn([code](const DynValue& body) {
        return dyn_bytes(http::http_response(static_cast<int>(code.as_int()), body.as_bytes()));
      });
    });
  }
  if (name == "int_to_bytes") {
    return pure_fn([](const DynValue& n) { return dyn_bytes(std::to_string(n.as_int())); });
  }
  if (name == "stdin") return dyn_fd(Fd{0});
  if (name == "stdout") return dyn_fd(Fd{1});
  if (name == "stderr") return dyn_fd(Fd{2});
  throw std::logic_error("unknown primitive " + name);
}

DynValue lookup(const EnvPtr& env, const std::string& x) {
  for (const Env* e = env.get(); e; e = e->up.get()) {
    if (e->name == x) return e->value;
  }
  return primitive(x);
}

IoArgs io_args(IoOp op, const DynValue& v) {
  switch (op) {
    case IoOp::Openfile:
      return OpenfileArgs{v.first().as_bytes(), static_cast<int>(v.second().first().as_int()),
                          static_cast<int>(v.second().second().as_int())};
    case IoOp::Write: return WriteArgs{v.first().as_fd(), v.second().as_bytes()};
    case IoOp::Socket: return Unit{};
    case IoOp::Setsockopt:
      return SetsockoptArgs{v.first().as_fd(), v.second().first().as_bytes(), v.second().second().as_int() != 0};
    case IoOp::Bind:
      return BindArgs{v.first().as_fd(), v.second().first().as_bytes(), static_cast<int>(v.second().second().as_int())};
    case IoOp::Listen: return ListenArgs{v.first().as_fd(), static_cast<int>(v.second().as_int())};
    default: return v.as_fd();
  }
}

DynValue io_result(const IoResult& r) {
  if (r.is_inr()) return dyn_inr(dyn_err(r.right()));
  return std::visit(
      [](const auto& x) -> DynValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return dyn_inl(dyn_unit());
        } else if constexpr (std::is_same_v<T, Fd>) {
          return dyn_inl(dyn_fd(x));
        } else {
          return dyn_inl(dyn_bytes(x));
        }
      },
      r.left());
}

Comp<DynValue> eval(const ExprPtr& e, const EnvPtr& env, const SecureIoLib& lib) {
  const auto& k = e->kids;
  switch (e->kind) {
    case ExprKind::Var: return ret(lookup(env, e->name));
    case ExprKind::Int: return ret(dyn_int(e->ival));
    case ExprKind::Bytes: return ret(dyn_bytes(e->sval));
    case ExprKind::Unit: return ret(dyn_unit());
    case ExprKind::Lam: {
      ExprPtr body = k[0];
      std::string x = e->name;
      return ret(dyn_closure([body, x, env, lib](const DynValue& v) { return eval(body, bind_var(x, v, env), lib); }));
    }
    case ExprKind::App: {
      ExprPtr arg = k[1];
      return and_then(eval(k[0], env, lib), [arg, env, lib](const DynValue& f) {
        return and_then(eval(arg, env, lib), [f](const DynValue& a) { return f.closure()(a); });
      });
    }
    case ExprKind::Let: {
      ExprPtr body = k[1];
      std::string x = e->name;
      return and_then(eval(k[0], env, lib),
                      [body, x, env, lib](const DynValue& v) { return eval(body, bind_var(x, v, env), lib); });
    }
    case ExprKind::Pair: {
      ExprPtr second = k[1];
      return and_then(eval(k[0], env, lib), [second, env, lib](const DynValue& a) {
        return fmap(eval(second, env, lib), [a](const DynValue& b) { return dyn_pair(a, b); });
      });
    }
    case ExprKind::Fst: return fmap(eval(k[0], env, lib), [](const DynValue& p) { return p.first(); });
    case ExprKind::Snd: return fmap(eval(k[0], env, lib), [](const DynValue& p) { return p.second(); });
    case ExprKind::Inl: return fmap(eval(k[0], env, lib), [](const DynValue& v) { return dyn_inl(v); });
    case ExprKind::Inr: return fmap(eval(k[0], env, lib), [](const DynValue& v) { return dyn_inr(v); });
    case ExprKind::Case: {
      ExprPtr l = k[1];
      ExprPtr r = k[2];
      std::string x = e->name;
      std::string y = e->name2;
      return and_then(eval(k[0], env, lib), [l, r, x, y, env, lib](const DynValue& v) {
        return v.is_inl() ? eval(l, bind_var(x, v.payload(), env), lib) : eval(r, bind_var(y, v.payload(), env), lib);
      });
    }
    case ExprKind::Io: {
      IoOp op = *op_from_name(e->name);
      return and_then(eval(k[0], env, lib), [op, lib](const DynValue& a) {
        return fmap(lib.secure_call(op, io_args(op, a)), io_result);
      });
    }
    case ExprKind::Ann: return eval(k[0], env, lib);
  }
  throw std::logic_error("unknown expression");
}

// Type a context is checked at: its outer annotation, or its leading
// lambdas completed to `either cod err`, or the canonical view of ctype.
CTypePtr context_type(const ExprPtr& e, const Type& ctype) {
  if (e->kind == ExprKind::Ann) return e->type;
  if (e->kind != ExprKind::Lam || ctype->kind != TypeDesc::Kind::Arrow) return from_boundary(ctype);
  std::vector<CTypePtr> params;
  for (const Expr* cur = e.get(); cur->kind == ExprKind::Lam; cur = cur->kids[0].get()) params.push_back(cur->type);
  CTypePtr t = c_either(from_boundary(ctype->b), c_err());
  for (auto it = params.rbegin(); it != params.rend(); ++it) t = c_arrow(*it, t);
  // Leading lambdas may include ones that belong to the result; fall back
  // to the shortest curried prefix that matches.
  for (std::size_t n = params.size(); n >= 1; --n) {
    CTypePtr cand = c_either(from_boundary(ctype->b), c_err());
    for (std::size_t i = n; i-- > 0;) cand = c_arrow(params[i], cand);
    auto b = to_boundary(cand);
    if (b && same_type(*b, ctype)) return cand;
  }
  return t;
}

template <class T>
Result<T> failure(Diag d) {
  return {std::nullopt, std::move(d)};
}

}  // namespace

Comp<DynValue> evaluate(const ExprPtr& e, const SecureIoLib& lib) { return eval(e, nullptr, lib); }

Result<TargetCtx> compile_context(const std::string& text, const Type& ctype) {
  auto parsed = parse(text);
  if (!parsed.ok()) return failure<TargetCtx>(parsed.error);
  ExprPtr e = *parsed.value;
  CTypePtr t = context_type(e, ctype);
  auto b = to_boundary(t);
  if (!b || !same_type(*b, ctype)) {
    return failure<TargetCtx>(Diag{e->pos, "context of type " + show_type(t) + " does not fit interface type " +
                                               type_to_string(ctype)});
  }
  auto typed = typecheck(e, t);
  if (!typed.ok()) return failure<TargetCtx>(typed.error);
  if (!is_value(e)) return failure<TargetCtx>(Diag{e->pos, "a context must be a value (for example a lambda)"});
  TargetCtx ctx = [e, t](const SecureIoLib& lib) {
    Comp<DynValue> c = evaluate(e, lib);
    if (!c.is_return()) throw std::logic_error("context value performed IO");
    return dsl_to_boundary(c.value(), t);
  };
  return {ctx, {}};
}

Result<DualTargetCtx> compile_dual_context(const std::string& text, const Type& ptype) {
  auto parsed = parse(text);
  if (!parsed.ok()) return failure<DualTargetCtx>(parsed.error);
  ExprPtr e = *parsed.value;
  CTypePtr param = e->kind == ExprKind::Lam ? e->type : from_boundary(ptype);
  CTypePtr t = e->kind == ExprKind::Ann ? e->type : c_arrow(param, c_either(c_int(), c_err()));
  auto pb = to_boundary(t->kind == CType::Kind::Arrow ? t->a : t);
  if (t->kind != CType::Kind::Arrow || !pb || !same_type(*pb, ptype)) {
    return failure<DualTargetCtx>(
        Diag{e->pos, "context of type " + show_type(t) + " cannot receive a library of type " + type_to_string(ptype)});
  }
  auto typed = typecheck(e, t);
  if (!typed.ok()) return failure<DualTargetCtx>(typed.error);
  if (!is_value(e)) return failure<DualTargetCtx>(Diag{e->pos, "a context must be a value (for example a lambda)"});
  DualTargetCtx ctx = [e, t](const DynValue& prog, const SecureIoLib& lib) {
    Comp<DynValue> c = evaluate(e, lib);
    if (!c.is_return()) throw std::logic_error("context value performed IO");
    return fmap(c.value().closure()(boundary_to_dsl(prog, t->a)), [](const DynValue& r) {
      return r.is_inl() ? static_cast<int>(r.payload().as_int()) : kRejectedContext;
    });
  };
  return {ctx, {}};
}

}  // namespace seclink::dsl
