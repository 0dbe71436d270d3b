#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "seclink/dsl.hpp"

namespace seclink::dsl {

namespace {

CTypePtr mk(CType::Kind k, CTypePtr a = nullptr, CTypePtr b = nullptr) {
  return std::make_shared<const CType>(CType{k, std::move(a), std::move(b)});
}

ExprPtr mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

Expr node(ExprKind k, std::vector<ExprPtr> kids = {}) {
  Expr e;
  e.kind = k;
  e.kids = std::move(kids);
  return e;
}

}  // namespace

CTypePtr c_unit() { return mk(CType::Kind::Unit); }
CTypePtr c_int() { return mk(CType::Kind::Int); }
CTypePtr c_bytes() { return mk(CType::Kind::Bytes); }
CTypePtr c_fd() { return mk(CType::Kind::Fd); }
CTypePtr c_err() { return mk(CType::Kind::Err); }
CTypePtr c_pair(CTypePtr a, CTypePtr b) { return mk(CType::Kind::Pair, std::move(a), std::move(b)); }
CTypePtr c_either(CTypePtr a, CTypePtr b) { return mk(CType::Kind::Either, std::move(a), std::move(b)); }
CTypePtr c_arrow(CTypePtr a, CTypePtr b) { return mk(CType::Kind::Arrow, std::move(a), std::move(b)); }

bool type_equal(const CTypePtr& x, const CTypePtr& y) {
  if (x->kind != y->kind) return false;
  if (x->a && !type_equal(x->a, y->a)) return false;
  if (x->b && !type_equal(x->b, y->b)) return false;
  return true;
}

std::string show_type(const CTypePtr& t) {
  switch (t->kind) {
    case CType::Kind::Unit: return "unit";
    case CType::Kind::Int: return "int";
    case CType::Kind::Bytes: return "bytes";
    case CType::Kind::Fd: return "fd";
    case CType::Kind::Err: return "err";
    case CType::Kind::Pair: return "(" + show_type(t->a) + " * " + show_type(t->b) + ")";
    case CType::Kind::Either: return "(either " + show_type(t->a) + " " + show_type(t->b) + ")";
    case CType::Kind::Arrow: return "(" + show_type(t->a) + " -> " + show_type(t->b) + ")";
  }
  return "?";
}

ExprPtr e_var(std::string x) {
  Expr e = node(ExprKind::Var);
  e.name = std::move(x);
  return mk(std::move(e));
}
ExprPtr e_lam(std::string x, CTypePtr t, ExprPtr body) {
  Expr e = node(ExprKind::Lam, {std::move(body)});
  e.name = std::move(x);
  e.type = std::move(t);
  return mk(std::move(e));
}
ExprPtr e_app(ExprPtr f, ExprPtr a) { return mk(node(ExprKind::App, {std::move(f), std::move(a)})); }
ExprPtr e_let(std::string x, ExprPtr bound, ExprPtr body) {
  Expr e = node(ExprKind::Let, {std::move(bound), std::move(body)});
  e.name = std::move(x);
  return mk(std::move(e));
}
ExprPtr e_pair(ExprPtr a, ExprPtr b) { return mk(node(ExprKind::Pair, {std::move(a), std::move(b)})); }
ExprPtr e_fst(ExprPtr a) { return mk(node(ExprKind::Fst, {std::move(a)})); }
ExprPtr e_snd(ExprPtr a) { return mk(node(ExprKind::Snd, {std::move(a)})); }
ExprPtr e_inl(ExprPtr a) { return mk(node(ExprKind::Inl, {std::move(a)})); }
ExprPtr e_inr(ExprPtr a) { return mk(node(ExprKind::Inr, {std::move(a)})); }
ExprPtr e_case(ExprPtr scrut, std::string x, ExprPtr l, std::string y, ExprPtr r) {
  Expr e = node(ExprKind::Case, {std::move(scrut), std::move(l), std::move(r)});
  e.name = std::move(x);
  e.name2 = std::move(y);
  return mk(std::move(e));
}
ExprPtr e_int(std::int64_t n) {
  Expr e = node(ExprKind::Int);
  e.ival = n;
  return mk(std::move(e));
}
ExprPtr e_bytes(std::string s) {
  Expr e = node(ExprKind::Bytes);
  e.sval = std::move(s);
  return mk(std::move(e));
}
ExprPtr e_unit() { return mk(node(ExprKind::Unit)); }
ExprPtr e_io(std::string op, ExprPtr arg) {
  Expr e = node(ExprKind::Io, {std::move(arg)});
  e.name = std::move(op);
  return mk(std::move(e));
}
ExprPtr e_ann(ExprPtr inner, CTypePtr t) {
  Expr e = node(ExprKind::Ann, {std::move(inner)});
  e.type = std::move(t);
  return mk(std::move(e));
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x->kind != y->kind || x->name != y->name || x->name2 != y->name2 || x->ival != y->ival ||
      x->sval != y->sval || x->kids.size() != y->kids.size()) {
    return false;
  }
  if (static_cast<bool>(x->type) != static_cast<bool>(y->type)) return false;
  if (x->type && !type_equal(x->type, y->type)) return false;
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    if (!expr_equal(x->kids[i], y->kids[i])) return false;
  }
  return true;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c >= 0x7f) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

}  // namespace

std::string pretty(const ExprPtr& e) {
  const auto& k = e->kids;
  switch (e->kind) {
    case ExprKind::Var: return e->name;
    case ExprKind::Int: return std::to_string(e->ival);
    case ExprKind::Bytes: return quote(e->sval);
    case ExprKind::Unit: return "()";
    case ExprKind::Lam: return "(\\" + e->name + ":" + show_type(e->type) + ". " + pretty(k[0]) + ")";
    case ExprKind::App: return "(" + pretty(k[0]) + " " + pretty(k[1]) + ")";
    case ExprKind::Let: return "(let " + e->name + " = " + pretty(k[0]) + " in " + pretty(k[1]) + ")";
    case ExprKind::Pair: return "(" + pretty(k[0]) + ", " + pretty(k[1]) + ")";
    case ExprKind::Fst: return "(fst " + pretty(k[0]) + ")";
    case ExprKind::Snd: return "(snd " + pretty(k[0]) + ")";
    case ExprKind::Inl: return "(inl " + pretty(k[0]) + ")";
    case ExprKind::Inr: return "(inr " + pretty(k[0]) + ")";
    case ExprKind::Case:
      return "(case " + pretty(k[0]) + " of Inl " + e->name + " => " + pretty(k[1]) + " | Inr " + e->name2 +
             " => " + pretty(k[2]) + ")";
    case ExprKind::Io: return "(io " + e->name + " " + pretty(k[0]) + ")";
    case ExprKind::Ann: return "(" + pretty(k[0]) + " : " + show_type(e->type) + ")";
  }
  return "?";
}

std::string Diag::to_string() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message;
}

namespace {

enum class Tok { Ident, Int, String, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t ival = 0;
  Pos pos;
};

struct SyntaxError {
  Diag diag;
};

[[noreturn]] void fail(Pos p, std::string msg) { throw SyntaxError{Diag{p, std::move(msg)}}; }

const char* const kKeywords[] = {"let", "in",  "case",  "of",    "inl", "inr",   "Inl", "Inr",   "fst",
                                 "snd", "io",  "unit",  "int",   "bytes", "fd",  "err", "either"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (i_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' ||
                                    src_[i_] == '\'')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        t.kind = Tok::Int;
        t.text += advance();
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) t.text += advance();
        try {
          t.ival = std::stoll(t.text);
        } catch (const std::out_of_range&) {
          fail(t.pos, "integer literal out of range");
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = string_literal();
      } else {
        t.kind = Tok::Sym;
        static const char* const two[] = {"=>", "->"};
        bool matched = false;
        for (const char* s : two) {
          if (src_.compare(i_, 2, s) == 0) {
            t.text = s;
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string("\\:.=|(),*").find(c) == std::string::npos) {
            fail(t.pos, std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(t);
    }
  }

 private:
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    return c;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string string_literal() {
    Pos start = pos_;
    advance();
    std::string out;
    for (;;) {
      if (i_ >= src_.size()) fail(start, "unterminated string literal");
      char c = advance();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (i_ >= src_.size()) fail(start, "unterminated string literal");
      char e = advance();
      switch (e) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'x': {
          if (i_ + 2 > src_.size()) fail(pos_, "bad \\x escape");
          std::string hex{advance(), advance()};
          if (!std::isxdigit(static_cast<unsigned char>(hex[0])) || !std::isxdigit(static_cast<unsigned char>(hex[1]))) {
            fail(pos_, "bad \\x escape");
          }
          out += static_cast<char>(std::stoi(hex, nullptr, 16));
          break;
        }
        default: fail(pos_, std::string("unknown escape \\") + e);
      }
    }
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Pos pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr whole_expr() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail(peek().pos, "unexpected '" + peek().text + "' after expression");
    return e;
  }

  CTypePtr whole_type() {
    CTypePtr t = type();
    if (peek().kind != Tok::End) fail(peek().pos, "unexpected '" + peek().text + "' after type");
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool is_word(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(peek().pos, std::string("expected '") + s + "'" + found());
    next();
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail(peek().pos, std::string("expected '") + s + "'" + found());
    next();
  }
  std::string found() const {
    return peek().kind == Tok::End ? " but reached end of input" : " but found '" + peek().text + "'";
  }

  std::string binder() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail(peek().pos, "expected a variable name" + found());
    return next().text;
  }

  static ExprPtr at(ExprPtr e, Pos p) {
    auto copy = std::make_shared<Expr>(*e);
    copy->pos = p;
    return copy;
  }

  ExprPtr expr() {
    Pos p = peek().pos;
    if (is_sym("\\")) {
      next();
      std::string x = binder();
      expect_sym(":");
      CTypePtr t = type();
      expect_sym(".");
      return at(e_lam(x, t, expr()), p);
    }
    if (is_word("let")) {
      next();
      std::string x = binder();
      expect_sym("=");
      ExprPtr bound = expr();
      expect_word("in");
      return at(e_let(x, bound, expr()), p);
    }
    if (is_word("case")) {
      next();
      ExprPtr scrut = expr();
      expect_word("of");
      if (!is_word("Inl") && !is_word("inl")) fail(peek().pos, "expected 'Inl'" + found());
      next();
      std::string x = binder();
      expect_sym("=>");
      ExprPtr l = expr();
      expect_sym("|");
      if (!is_word("Inr") && !is_word("inr")) fail(peek().pos, "expected 'Inr'" + found());
      next();
      std::string y = binder();
      expect_sym("=>");
      ExprPtr r = expr();
      return at(e_case(scrut, x, l, y, r), p);
    }
    return application();
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Int || t.kind == Tok::String) return true;
    if (t.kind == Tok::Sym) return t.text == "(";
    if (t.kind == Tok::Ident) {
      return !is_keyword(t.text) || t.text == "inl" || t.text == "inr" || t.text == "fst" || t.text == "snd" ||
             t.text == "io";
    }
    return false;
  }

  ExprPtr application() {
    ExprPtr head = prefix();
    while (starts_atom()) {
      Pos p = peek().pos;
      head = at(e_app(head, prefix()), p);
    }
    return head;
  }

  ExprPtr prefix() {
    Pos p = peek().pos;
    if (is_word("inl")) return next(), at(e_inl(atom()), p);
    if (is_word("inr")) return next(), at(e_inr(atom()), p);
    if (is_word("fst")) return next(), at(e_fst(atom()), p);
    if (is_word("snd")) return next(), at(e_snd(atom()), p);
    if (is_word("io")) {
      next();
      if (peek().kind != Tok::Ident) fail(peek().pos, "expected an operation name" + found());
      std::string op = next().text;
      return at(e_io(op, atom()), p);
    }
    return atom();
  }

  ExprPtr atom() {
    Pos p = peek().pos;
    const Token& t = peek();
    if (t.kind == Tok::Int) return at(e_int(next().ival), p);
    if (t.kind == Tok::String) return at(e_bytes(next().text), p);
    if (t.kind == Tok::Ident) {
      if (is_keyword(t.text)) fail(t.pos, "unexpected keyword '" + t.text + "'");
      return at(e_var(next().text), p);
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        return at(e_unit(), p);
      }
      ExprPtr e = expr();
      if (is_sym(":")) {
        next();
        CTypePtr ty = type();
        expect_sym(")");
        return at(e_ann(e, ty), p);
      }
      if (is_sym(",")) {
        std::vector<ExprPtr> parts{e};
        while (is_sym(",")) {
          next();
          parts.push_back(expr());
        }
        expect_sym(")");
        ExprPtr acc = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) acc = e_pair(parts[i], acc);
        return at(acc, p);
      }
      expect_sym(")");
      return e;
    }
    fail(t.pos, "expected an expression" + found());
  }

  CTypePtr type() {
    CTypePtr lhs = product();
    if (is_sym("->")) {
      next();
      return c_arrow(lhs, type());
    }
    return lhs;
  }

  CTypePtr product() {
    CTypePtr lhs = type_atom();
    if (is_sym("*")) {
      next();
      return c_pair(lhs, product());
    }
    return lhs;
  }

  CTypePtr type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "unit") return next(), c_unit();
      if (t.text == "int") return next(), c_int();
      if (t.text == "bytes") return next(), c_bytes();
      if (t.text == "fd") return next(), c_fd();
      if (t.text == "err") return next(), c_err();
      if (t.text == "either") {
        next();
        CTypePtr a = type_atom();
        return c_either(a, type_atom());
      }
    }
    if (is_sym("(")) {
      next();
      CTypePtr ty = type();
      expect_sym(")");
      return ty;
    }
    fail(t.pos, "expected a type" + found());
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Result<ExprPtr> parse(const std::string& text) {
  try {
    return {Parser(Lexer(text).run()).whole_expr(), {}};
  } catch (const SyntaxError& e) {
    return {std::nullopt, e.diag};
  }
}

Result<CTypePtr> parse_type(const std::string& text) {
  try {
    return {Parser(Lexer(text).run()).whole_type(), {}};
  } catch (const SyntaxError& e) {
    return {std::nullopt, e.diag};
  }
}

}  // namespace seclink::dsl
