#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "biquat/expr.hpp"

namespace biquat {

/// Truncated power series about `center`, valid strictly inside `radius`.
struct PowerSeries {
  Complex center{};
  std::vector<Complex> coeffs;  // coeffs[k] multiplies (z-center)^k
  double radius = std::numeric_limits<double>::infinity();
};

/// Taylor coefficients past this order require simplification the symbolic
/// engine does not attempt; we refuse rather than degrade silently.
inline constexpr int kMaxTaylorOrder = 32;

/// An analytic function of one complex variable, backed by an expression
/// tree, a power series, or a builtin. All representations support
/// evaluation, exact differentiation, and Taylor coefficients.
class AnalyticFn {
 public:
  /// Parses the expression grammar with variable name "z".
  static AnalyticFn parse(std::string_view src);

  static AnalyticFn from_expr(ExprPtr e);
  static AnalyticFn series(PowerSeries ps);
  static AnalyticFn exponential();
  static AnalyticFn sine();
  static AnalyticFn cosine();
  static AnalyticFn identity();
  static AnalyticFn constant(Complex c);
  static AnalyticFn monomial(int n);  // z^n, n >= 0

  AnalyticFn() : AnalyticFn(constant(Complex{})) {}

  Complex operator()(Complex z) const;

  /// Exact derivative (symbolic for trees, term shift for series, table
  /// lookup for builtins).
  AnalyticFn derivative() const;

  /// Coefficients c_0..c_n of the expansion about `center`,
  /// c_k = f^(k)(center)/k!. Series recenter exactly; other
  /// representations differentiate repeatedly (n <= kMaxTaylorOrder).
  std::vector<Complex> taylor_coeffs(Complex center, int n) const;

  std::string str() const;

  bool is_series() const { return std::holds_alternative<PowerSeries>(repr_); }

  /// Expression-tree view with the variable renumbered to `var_index`
  /// (series are expanded to their polynomial form).
  ExprPtr as_expr(int var_index = 0) const;

 private:
  struct Builtin {
    enum class Kind { Exp, Sin, Cos, Identity, Const, Monomial } kind;
    Complex c{};  // Const
    int n = 0;    // Monomial
  };

  explicit AnalyticFn(std::variant<ExprPtr, PowerSeries, Builtin> repr)
      : repr_(std::move(repr)) {}

  std::variant<ExprPtr, PowerSeries, Builtin> repr_;
};

}  // namespace biquat
