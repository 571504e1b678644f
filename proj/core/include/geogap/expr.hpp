#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "geogap/errors.hpp"

namespace geogap::expr {

enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };

struct Node;

/// Immutable expression tree; sharing subtrees is safe.
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double value = 0.0;   // Number (always >= 0; negation is a Neg node)
  int var = 0;          // Var, 0-based
  Func func = Func::Sin;
  Expr a, b;
  std::size_t offset = 0; // byte offset in the original source, for errors
};

// Construction helpers. Fold constant subtrees and drop arithmetic
// identities (x+0, 1*x, x^1); nothing beyond that.
Expr number(double v);
Expr var(int index0);
Expr neg(Expr a);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr a, Expr b);
Expr call(Func f, Expr a);

/// Grammar:
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := unary ('^' factor)?          (right-associative)
///   unary   := '-' unary | primary
///   primary := number | var | func '(' expr ')' | '(' expr ')'
/// Variables are x1..xd (1-based names, stored 0-based). Throws ParseError.
Expr parse(std::string_view src, int dim);

/// Throws EvalError on numeric domain violations, with the subexpression's
/// source offset.
double eval(const Expr& e, std::span<const double> x);

/// Symbolic partial derivative with respect to variable `var0` (0-based).
Expr diff(const Expr& e, int var0);

/// Fully parenthesized text form; parse(print(e), d) is structurally
/// identical to e.
std::string print(const Expr& e);

/// Structural equality (same tree shape, values, variables, functions).
bool equal(const Expr& a, const Expr& b);

/// True if no Var node occurs in e.
bool is_constant(const Expr& e);

} // namespace geogap::expr
