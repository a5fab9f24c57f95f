#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "biquat/errors.hpp"
#include "biquat/quat.hpp"

namespace biquat {

/// Expression trees for analytic functions. The grammar is
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' integer)?
///   atom   := number | 'i' | variable | func '(' expr ')' | '(' expr ')' | '-' atom
///
/// with func in {exp, sin, cos}. Only analytic primitives exist: there is no
/// conjugation, modulus, or Re/Im, so every well-formed tree is analytic
/// away from division poles.
enum class ExprKind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Exp, Sin, Cos };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Number;
  Complex value{};    // Number
  int var = 0;        // Var: index into the variable table
  Func func{};        // Call
  int expo = 0;       // Pow
  ExprPtr a, b;       // children (unary nodes use `a`)
};

// Node constructors. Nodes whose operands are all numeric literals are
// folded immediately, so printing and reparsing reproduces trees exactly.
ExprPtr number(Complex v);
ExprPtr variable(int index);
ExprPtr neg(ExprPtr x);
ExprPtr add(ExprPtr x, ExprPtr y);
ExprPtr sub(ExprPtr x, ExprPtr y);
ExprPtr mul(ExprPtr x, ExprPtr y);
ExprPtr div(ExprPtr x, ExprPtr y);
ExprPtr pow(ExprPtr x, int n);
ExprPtr call(Func f, ExprPtr arg);

/// Parses `src` against a table of variable names (index = table position).
/// Throws SyntaxError / UnknownFunction / NonIntegerExponent.
ExprPtr parse_expr(std::string_view src, std::span<const std::string_view> vars);

/// Unambiguous (fully parenthesized) rendering; reparsing yields a
/// structurally identical tree.
std::string to_string(const ExprPtr& e, std::span<const std::string_view> vars);

/// Evaluates with `args[i]` bound to variable i. Throws
/// PoleOrDivisionByZero when a divisor modulus drops below 1e-300.
Complex eval(const ExprPtr& e, std::span<const Complex> args);

/// Partial derivative w.r.t. variable `var`, symbolically, simplified.
ExprPtr derivative(const ExprPtr& e, int var);

/// Canonical form: constants folded, sums/products flattened, like terms
/// collected, factors sorted in a deterministic order.
ExprPtr simplify(const ExprPtr& e);

/// Deep structural equality.
bool equal(const ExprPtr& x, const ExprPtr& y);

/// Total deterministic order on trees (used for canonical sorting).
int compare(const ExprPtr& x, const ExprPtr& y);

/// True if the tree references variable `var`.
bool depends_on(const ExprPtr& e, int var);

/// Rewrites every variable index through `map` (size >= number of vars used).
ExprPtr remap_vars(const ExprPtr& e, std::span<const int> map);

/// z^n by binary exponentiation (negative n allowed; pole-checked).
Complex cpow_int(Complex z, int n);

}  // namespace biquat
