#include "geogap/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace geogap::expr {

namespace {

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

bool is_number(const Expr& e, double v) {
  return e->kind == Kind::Number && e->value == v;
}

bool both_numbers(const Expr& a, const Expr& b) {
  return a->kind == Kind::Number && b->kind == Kind::Number;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

} // namespace

Expr number(double v) {
  if (v < 0.0) return neg(number(-v));
  if (v == 0.0) v = 0.0; // normalize -0.0
  Node n;
  n.kind = Kind::Number;
  n.value = v;
  return make(std::move(n));
}

Expr var(int index0) {
  Node n;
  n.kind = Kind::Var;
  n.var = index0;
  return make(std::move(n));
}

Expr neg(Expr a) {
  if (a->kind == Kind::Number && a->value == 0.0) return a;
  if (a->kind == Kind::Neg) return a->a;
  Node n;
  n.kind = Kind::Neg;
  n.offset = a->offset;
  n.a = std::move(a);
  return make(std::move(n));
}

Expr add(Expr a, Expr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  if (both_numbers(a, b)) {
    const double v = a->value + b->value;
    if (std::isfinite(v)) return number(v);
  }
  Node n;
  n.kind = Kind::Add;
  n.offset = a->offset;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Expr sub(Expr a, Expr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return neg(std::move(b));
  if (both_numbers(a, b)) {
    const double v = a->value - b->value;
    if (std::isfinite(v)) return number(v);
  }
  Node n;
  n.kind = Kind::Sub;
  n.offset = a->offset;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Expr mul(Expr a, Expr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  if (both_numbers(a, b)) {
    const double v = a->value * b->value;
    if (std::isfinite(v)) return number(v);
  }
  Node n;
  n.kind = Kind::Mul;
  n.offset = a->offset;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Expr div(Expr a, Expr b) {
  if (is_number(b, 1.0)) return a;
  if (both_numbers(a, b) && b->value != 0.0) {
    const double v = a->value / b->value;
    if (std::isfinite(v)) return number(v);
  }
  Node n;
  n.kind = Kind::Div;
  n.offset = a->offset;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Expr pow(Expr a, Expr b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(b, 0.0)) return number(1.0);
  if (both_numbers(a, b) && a->value > 0.0) {
    const double v = std::pow(a->value, b->value);
    if (std::isfinite(v)) return number(v);
  }
  Node n;
  n.kind = Kind::Pow;
  n.offset = a->offset;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Expr call(Func f, Expr a) {
  Node n;
  n.kind = Kind::Call;
  n.func = f;
  n.offset = a->offset;
  n.a = std::move(a);
  return make(std::move(n));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

  Expr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  std::string_view src_;
  int dim_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Expr with_offset(Expr e, std::size_t off) {
    if (e->offset == off) return e;
    Node n = *e;
    n.offset = off;
    return make(std::move(n));
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      const char c = peek();
      if (c == '+' || c == '-') {
        const std::size_t off = pos_;
        ++pos_;
        Expr rhs = parse_term();
        e = with_offset(c == '+' ? add(e, rhs) : sub(e, rhs), off);
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        const std::size_t off = pos_;
        ++pos_;
        Expr rhs = parse_factor();
        e = with_offset(c == '*' ? mul(e, rhs) : div(e, rhs), off);
      } else {
        return e;
      }
    }
  }

  // factor := unary ('^' factor)?   -- right-associative
  Expr parse_factor() {
    Expr base = parse_unary();
    if (peek() == '^') {
      const std::size_t off = pos_;
      ++pos_;
      Expr exp = parse_factor();
      return with_offset(pow(base, exp), off);
    }
    return base;
  }

  Expr parse_unary() {
    if (peek() == '-') {
      const std::size_t off = pos_;
      ++pos_;
      return with_offset(neg(parse_unary()), off);
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const char c = peek();
    const std::size_t off = pos_;
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number(off);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))
      return parse_identifier(off);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number(std::size_t off) {
    double v = 0.0;
    const char* first = src_.data() + off;
    const char* last = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr == first)
      throw ParseError("malformed number", off);
    pos_ = std::size_t(ptr - src_.data());
    return with_offset(number(v), off);
  }

  Expr parse_identifier(std::size_t off) {
    std::size_t end = off;
    auto alnum = [](char ch) {
      return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
             (ch >= '0' && ch <= '9');
    };
    while (end < src_.size() && alnum(src_[end])) ++end;
    std::string name(src_.substr(off, end - off));
    pos_ = end;

    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        if (name[i] < '0' || name[i] > '9') digits = false;
      if (digits) {
        const long idx = std::strtol(name.c_str() + 1, nullptr, 10);
        if (idx < 1 || idx > dim_)
          throw ParseError("variable index out of range for dimension " +
                               std::to_string(dim_),
                           off);
        return with_offset(var(int(idx - 1)), off);
      }
    }

    static const std::map<std::string, Func> funcs = {
        {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
        {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
        {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt}};
    auto it = funcs.find(name);
    if (it == funcs.end())
      throw ParseError("unknown identifier '" + name + "'", off);
    if (peek() != '(')
      throw ParseError("expected '(' after function name", pos_);
    ++pos_;
    Expr arg = parse_expr();
    if (peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return with_offset(call(it->second, arg), off);
  }
};

} // namespace

Expr parse(std::string_view src, int dim) { return Parser(src, dim).run(); }

// ------------------------------------------------------------- evaluation

double eval(const Expr& e, std::span<const double> x) {
  switch (e->kind) {
    case Kind::Number:
      return e->value;
    case Kind::Var:
      if (e->var < 0 || std::size_t(e->var) >= x.size())
        throw DimensionError("eval: variable x" + std::to_string(e->var + 1) +
                             " exceeds point dimension " +
                             std::to_string(x.size()));
      return x[std::size_t(e->var)];
    case Kind::Neg:
      return -eval(e->a, x);
    case Kind::Add:
      return eval(e->a, x) + eval(e->b, x);
    case Kind::Sub:
      return eval(e->a, x) - eval(e->b, x);
    case Kind::Mul:
      return eval(e->a, x) * eval(e->b, x);
    case Kind::Div: {
      const double num = eval(e->a, x);
      const double den = eval(e->b, x);
      if (den == 0.0) throw EvalError("division by zero", e->offset);
      const double v = num / den;
      if (!std::isfinite(v)) throw EvalError("non-finite quotient", e->offset);
      return v;
    }
    case Kind::Pow: {
      const double base = eval(e->a, x);
      const double ex = eval(e->b, x);
      const bool integral =
          ex == std::floor(ex) && std::abs(ex) <= 9.0e15;
      if (!integral && base < 0.0)
        throw EvalError("fractional power of negative base", e->offset);
      if (base == 0.0 && ex < 0.0)
        throw EvalError("zero raised to negative power", e->offset);
      const double v = std::pow(base, ex);
      if (!std::isfinite(v)) throw EvalError("non-finite power", e->offset);
      return v;
    }
    case Kind::Call: {
      const double u = eval(e->a, x);
      double v = 0.0;
      switch (e->func) {
        case Func::Sin: v = std::sin(u); break;
        case Func::Cos: v = std::cos(u); break;
        case Func::Tan: v = std::tan(u); break;
        case Func::Sinh: v = std::sinh(u); break;
        case Func::Cosh: v = std::cosh(u); break;
        case Func::Tanh: v = std::tanh(u); break;
        case Func::Exp: v = std::exp(u); break;
        case Func::Log:
          if (u <= 0.0)
            throw EvalError("log of nonpositive value", e->offset);
          v = std::log(u);
          break;
        case Func::Sqrt:
          if (u < 0.0) throw EvalError("sqrt of negative value", e->offset);
          v = std::sqrt(u);
          break;
      }
      if (!std::isfinite(v))
        throw EvalError("non-finite function value", e->offset);
      return v;
    }
  }
  throw Error("eval: corrupt expression node");
}

// ---------------------------------------------------------------- diff

Expr diff(const Expr& e, int var0) {
  switch (e->kind) {
    case Kind::Number:
      return number(0.0);
    case Kind::Var:
      return number(e->var == var0 ? 1.0 : 0.0);
    case Kind::Neg:
      return neg(diff(e->a, var0));
    case Kind::Add:
      return add(diff(e->a, var0), diff(e->b, var0));
    case Kind::Sub:
      return sub(diff(e->a, var0), diff(e->b, var0));
    case Kind::Mul:
      return add(mul(diff(e->a, var0), e->b), mul(e->a, diff(e->b, var0)));
    case Kind::Div:
      return div(sub(mul(diff(e->a, var0), e->b), mul(e->a, diff(e->b, var0))),
                 mul(e->b, e->b));
    case Kind::Pow: {
      if (is_constant(e->b)) {
        // d(a^c) = c * a^(c-1) * a'
        return mul(mul(e->b, pow(e->a, sub(e->b, number(1.0)))),
                   diff(e->a, var0));
      }
      // d(a^b) = a^b * (b' log a + b a'/a)
      return mul(pow(e->a, e->b),
                 add(mul(diff(e->b, var0), call(Func::Log, e->a)),
                     div(mul(e->b, diff(e->a, var0)), e->a)));
    }
    case Kind::Call: {
      const Expr du = diff(e->a, var0);
      switch (e->func) {
        case Func::Sin: return mul(call(Func::Cos, e->a), du);
        case Func::Cos: return mul(neg(call(Func::Sin, e->a)), du);
        case Func::Tan:
          return div(du, pow(call(Func::Cos, e->a), number(2.0)));
        case Func::Sinh: return mul(call(Func::Cosh, e->a), du);
        case Func::Cosh: return mul(call(Func::Sinh, e->a), du);
        case Func::Tanh:
          return div(du, pow(call(Func::Cosh, e->a), number(2.0)));
        case Func::Exp: return mul(call(Func::Exp, e->a), du);
        case Func::Log: return div(du, e->a);
        case Func::Sqrt:
          return div(du, mul(number(2.0), call(Func::Sqrt, e->a)));
      }
      break;
    }
  }
  throw Error("diff: corrupt expression node");
}

// ---------------------------------------------------------------- print

namespace {

void print_rec(const Expr& e, std::string& out) {
  char buf[40];
  switch (e->kind) {
    case Kind::Number:
      std::snprintf(buf, sizeof buf, "%.17g", e->value);
      out += buf;
      return;
    case Kind::Var:
      out += 'x';
      out += std::to_string(e->var + 1);
      return;
    case Kind::Neg:
      out += "(-";
      print_rec(e->a, out);
      out += ')';
      return;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
    case Kind::Pow: {
      const char op = e->kind == Kind::Add   ? '+'
                      : e->kind == Kind::Sub ? '-'
                      : e->kind == Kind::Mul ? '*'
                      : e->kind == Kind::Div ? '/'
                                             : '^';
      out += '(';
      print_rec(e->a, out);
      out += op;
      print_rec(e->b, out);
      out += ')';
      return;
    }
    case Kind::Call:
      out += func_name(e->func);
      out += '(';
      print_rec(e->a, out);
      out += ')';
      return;
  }
}

} // namespace

std::string print(const Expr& e) {
  std::string out;
  print_rec(e, out);
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Number: return a->value == b->value;
    case Kind::Var: return a->var == b->var;
    case Kind::Neg: return equal(a->a, b->a);
    case Kind::Call: return a->func == b->func && equal(a->a, b->a);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool is_constant(const Expr& e) {
  switch (e->kind) {
    case Kind::Number: return true;
    case Kind::Var: return false;
    case Kind::Neg:
    case Kind::Call: return is_constant(e->a);
    default: return is_constant(e->a) && is_constant(e->b);
  }
}

} // namespace geogap::expr
