#include "biquat/analytic.hpp"

#include <array>
#include <cmath>

namespace biquat {

namespace {

constexpr std::array<std::string_view, 1> kVarZ = {"z"};

Complex horner(const std::vector<Complex>& coeffs, Complex w) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace

AnalyticFn AnalyticFn::parse(std::string_view src) {
  return from_expr(parse_expr(src, kVarZ));
}

AnalyticFn AnalyticFn::from_expr(ExprPtr e) { return AnalyticFn{std::move(e)}; }

AnalyticFn AnalyticFn::series(PowerSeries ps) {
  if (ps.radius <= 0.0) throw Error("series: radius must be positive");
  return AnalyticFn{std::move(ps)};
}

AnalyticFn AnalyticFn::exponential() { return AnalyticFn{Builtin{Builtin::Kind::Exp}}; }
AnalyticFn AnalyticFn::sine() { return AnalyticFn{Builtin{Builtin::Kind::Sin}}; }
AnalyticFn AnalyticFn::cosine() { return AnalyticFn{Builtin{Builtin::Kind::Cos}}; }
AnalyticFn AnalyticFn::identity() { return AnalyticFn{Builtin{Builtin::Kind::Identity}}; }
AnalyticFn AnalyticFn::constant(Complex c) {
  return AnalyticFn{Builtin{Builtin::Kind::Const, c}};
}
AnalyticFn AnalyticFn::monomial(int n) {
  if (n < 0) throw Error("monomial: exponent must be >= 0");
  return AnalyticFn{Builtin{Builtin::Kind::Monomial, {}, n}};
}

Complex AnalyticFn::operator()(Complex z) const {
  if (const auto* e = std::get_if<ExprPtr>(&repr_)) {
    const std::array<Complex, 1> args = {z};
    return eval(*e, args);
  }
  if (const auto* ps = std::get_if<PowerSeries>(&repr_)) {
    if (std::abs(z - ps->center) >= ps->radius) {
      throw RadiusExceeded("power series evaluated outside its radius");
    }
    return horner(ps->coeffs, z - ps->center);
  }
  const auto& b = std::get<Builtin>(repr_);
  switch (b.kind) {
    case Builtin::Kind::Exp: return std::exp(z);
    case Builtin::Kind::Sin: return std::sin(z);
    case Builtin::Kind::Cos: return std::cos(z);
    case Builtin::Kind::Identity: return z;
    case Builtin::Kind::Const: return b.c;
    case Builtin::Kind::Monomial: return cpow_int(z, b.n);
  }
  return {};
}

AnalyticFn AnalyticFn::derivative() const {
  if (const auto* e = std::get_if<ExprPtr>(&repr_)) {
    return from_expr(biquat::derivative(*e, 0));
  }
  if (const auto* ps = std::get_if<PowerSeries>(&repr_)) {
    PowerSeries d{ps->center, {}, ps->radius};
    for (size_t k = 1; k < ps->coeffs.size(); ++k) {
      d.coeffs.push_back(static_cast<double>(k) * ps->coeffs[k]);
    }
    return series(std::move(d));
  }
  const auto& b = std::get<Builtin>(repr_);
  switch (b.kind) {
    case Builtin::Kind::Exp: return exponential();
    case Builtin::Kind::Sin: return cosine();
    case Builtin::Kind::Cos:
      return from_expr(simplify(neg(call(Func::Sin, variable(0)))));
    case Builtin::Kind::Identity: return constant(Complex{1.0});
    case Builtin::Kind::Const: return constant(Complex{});
    case Builtin::Kind::Monomial:
      if (b.n == 0) return constant(Complex{});
      if (b.n == 1) return constant(Complex{1.0});
      return from_expr(mul(number(Complex(b.n, 0.0)), pow(variable(0), b.n - 1)));
  }
  return constant(Complex{});
}

std::vector<Complex> AnalyticFn::taylor_coeffs(Complex center, int n) const {
  if (n < 0) throw Error("taylor_coeffs: order must be >= 0");
  if (const auto* ps = std::get_if<PowerSeries>(&repr_)) {
    // Exact recentering of the stored polynomial by the binomial theorem.
    const Complex delta = center - ps->center;
    if (std::abs(delta) >= ps->radius) {
      throw RadiusExceeded("taylor_coeffs: new center outside series radius");
    }
    std::vector<Complex> out(static_cast<size_t>(n) + 1, Complex{});
    const size_t K = ps->coeffs.size();
    for (size_t j = 0; j <= static_cast<size_t>(n); ++j) {
      Complex sum{};
      for (size_t k = j; k < K; ++k) {
        double binom = 1.0;
        for (size_t r = 0; r < j; ++r) {
          binom *= static_cast<double>(k - r) / static_cast<double>(j - r);
        }
        sum += ps->coeffs[k] * binom * cpow_int(delta, static_cast<int>(k - j));
      }
      out[j] = sum;
    }
    return out;
  }
  if (n > kMaxTaylorOrder) {
    throw Error("taylor_coeffs: order beyond " + std::to_string(kMaxTaylorOrder) +
                " is not supported");
  }
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n) + 1);
  AnalyticFn f = *this;
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      factorial *= k;
      f = f.derivative();
    }
    out.push_back(f(center) / factorial);
  }
  return out;
}

std::string AnalyticFn::str() const {
  if (const auto* e = std::get_if<ExprPtr>(&repr_)) return to_string(*e, kVarZ);
  if (const auto* ps = std::get_if<PowerSeries>(&repr_)) {
    return "series(center=" + std::to_string(ps->center.real()) + "+" +
           std::to_string(ps->center.imag()) + "i, terms=" +
           std::to_string(ps->coeffs.size()) + ")";
  }
  return to_string(as_expr(0), kVarZ);
}

ExprPtr AnalyticFn::as_expr(int var_index) const {
  if (const auto* e = std::get_if<ExprPtr>(&repr_)) {
    const std::array<int, 2> map = {var_index, var_index};
    return remap_vars(*e, map);
  }
  const ExprPtr z = variable(var_index);
  if (const auto* ps = std::get_if<PowerSeries>(&repr_)) {
    ExprPtr w = ps->center == Complex{} ? z : sub(z, number(ps->center));
    ExprPtr sum = number(Complex{});
    for (size_t k = 0; k < ps->coeffs.size(); ++k) {
      sum = add(sum, mul(number(ps->coeffs[k]), pow(w, static_cast<int>(k))));
    }
    return simplify(sum);
  }
  const auto& b = std::get<Builtin>(repr_);
  switch (b.kind) {
    case Builtin::Kind::Exp: return call(Func::Exp, z);
    case Builtin::Kind::Sin: return call(Func::Sin, z);
    case Builtin::Kind::Cos: return call(Func::Cos, z);
    case Builtin::Kind::Identity: return z;
    case Builtin::Kind::Const: return number(b.c);
    case Builtin::Kind::Monomial:
      if (b.n == 0) return number(Complex{1.0});
      return b.n == 1 ? z : pow(z, b.n);
  }
  return number(Complex{});
}

}  // namespace biquat
