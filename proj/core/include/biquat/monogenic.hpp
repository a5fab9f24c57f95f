#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biquat/analytic.hpp"
#include "biquat/frame.hpp"

namespace biquat {

/// Analytic function of the two projections, G(xi1, xi2). The chain rule
/// through xi gives exact spatial partials.
class BivarFn {
 public:
  /// Parses the expression grammar with variables "xi1", "xi2".
  static BivarFn parse(std::string_view src);
  static BivarFn from_expr(ExprPtr e);
  static BivarFn of_xi1(const AnalyticFn& f);  // f(xi1)
  static BivarFn of_xi2(const AnalyticFn& f);  // f(xi2)

  Complex operator()(Complex xi1, Complex xi2) const;
  BivarFn partial(int var) const;  // 0 -> d/dxi1, 1 -> d/dxi2
  std::string str() const;
  const ExprPtr& expr() const { return e_; }

  friend BivarFn operator+(const BivarFn& x, const BivarFn& y);
  friend BivarFn operator*(const BivarFn& x, const BivarFn& y);

 private:
  explicit BivarFn(ExprPtr e) : e_(std::move(e)) {}
  ExprPtr e_;
};

/// Component given as an opaque callable of (x,y,z); spatial partials come
/// from the supplied closures or, when absent, central differences with
/// step 1e-6*(1+|coordinate|).
struct RawComponent {
  std::function<Complex(Point3)> value;
  std::function<Complex(Point3)> dx, dy, dz;  // optional exact partials
};

/// One coordinate function U_k of a map, either analytic in (xi1, xi2)
/// (partial trees precomputed) or a raw callable.
class Component {
 public:
  Component() : Component(BivarFn::from_expr(number(Complex{}))) {}
  Component(BivarFn g);             // NOLINT(google-explicit-constructor)
  Component(RawComponent raw);      // NOLINT(google-explicit-constructor)

  bool analytic() const { return bivar_.has_value(); }
  const BivarFn* bivar() const { return bivar_ ? &*bivar_ : nullptr; }

  Complex value(const Frame& fr, Point3 p) const;

  /// Gradient (dU/dx, dU/dy, dU/dz) at p.
  std::array<Complex, 3> gradient(const Frame& fr, Point3 p) const;

 private:
  std::optional<BivarFn> bivar_, d1_, d2_;
  RawComponent raw_;
};

/// Map written out by coordinates: Phi = sum U_k(x,y,z) e_k.
class ComponentMap {
 public:
  ComponentMap(Frame fr, std::array<Component, 4> comps)
      : frame_(fr), u_(std::move(comps)) {}

  const Frame& frame() const { return frame_; }
  const Component& component(int k) const { return u_[static_cast<size_t>(k)]; }
  bool all_analytic() const;

  Quat value(Point3 p) const;

  struct Partials {
    Quat dx, dy, dz;
    Quat directional(Point3 dir) const {
      return dir.x * dx + dir.y * dy + dir.z * dz;
    }
  };
  Partials partials(Point3 p) const;

 private:
  Frame frame_;
  std::array<Component, 4> u_;
};

/// Map in the right form Phi = F1(xi1)e1 + F2(xi2)e2 + F3(xi1)e3 + F4(xi2)e4.
struct RightGMap {
  Frame frame;
  AnalyticFn f1, f2, f3, f4;
};

/// Map in the left form Phi = F1(xi1)e1 + F2(xi2)e2 + F3(xi2)e3 + F4(xi1)e4
/// (note the e3/e4 variable swap relative to the right form).
struct LeftGMap {
  Frame frame;
  AnalyticFn f1, f2, f3, f4;
};

Quat value(const RightGMap& m, Point3 p);
Quat value(const LeftGMap& m, Point3 p);

/// Derivative in the Gateaux sense: F_k' placed on the same basis pattern.
Quat gateaux_derivative(const RightGMap& m, Point3 p);
Quat gateaux_derivative(const LeftGMap& m, Point3 p);

ComponentMap to_components(const RightGMap& m);
ComponentMap to_components(const LeftGMap& m);

/// For each eps: norm of (Phi(p+eps*h) - Phi(p))/eps - h*Phi'(p) (right) or
/// ... - Phi'(p)*h (left), h embedded into the span.
std::vector<double> gateaux_limit_residual(const RightGMap& m, Point3 p, Point3 h,
                                           std::span<const double> eps);
std::vector<double> gateaux_limit_residual(const LeftGMap& m, Point3 p, Point3 h,
                                           std::span<const double> eps);

/// Cauchy-Riemann-type defects. Right: (dPhi/dy - i2*dPhi/dx,
/// dPhi/dz - i3*dPhi/dx); left multiplies i2, i3 from the right.
std::pair<Quat, Quat> cr_residual(const ComponentMap& cm, Point3 p, Side side);

/// Least-squares coefficients of dU_k = lambda*dxi1 + mu*dxi2.
struct SpanCoefficients {
  Complex lambda{}, mu{};
  double residual = 0.0;  // Euclidean defect of the 3-equation system
};

struct HMonogenicTest {
  bool pass = false;
  std::array<SpanCoefficients, 4> comps{};
  double max_residual = 0.0;
};

/// Differentiability in the Hausdorff sense at p: every component gradient
/// must lie in the complex span of (1,a1,b1) and (1,a2,b2). Residual
/// threshold is tol*(1+|gradient|) per component.
HMonogenicTest h_monogenic_test(const ComponentMap& cm, Point3 p, double tol);

/// Explicit pairs realizing dPhi = sum_s A_s dzeta B_s at a point.
struct HausdorffDecomposition {
  std::vector<std::pair<Quat, Quat>> pairs;
  Point3 point{};
};

/// Builds the canonical (<= 8 pair) decomposition from the span
/// coefficients. Throws NotHMonogenic when the span test fails.
HausdorffDecomposition hausdorff_decomposition(const ComponentMap& cm, Point3 p,
                                               double tol = 1e-9);

/// sum_s A_s * embed(dir) * B_s — the differential applied to a direction.
Quat apply_decomposition(const HausdorffDecomposition& d, const Frame& fr,
                         Point3 dir);

/// sum_s A_s * B_s.
Quat decomposition_derivative(const HausdorffDecomposition& d);

/// The Hausdorff derivative dPhi/dx (requires the span test to pass).
Quat hausdorff_derivative(const ComponentMap& cm, Point3 p, double tol = 1e-9);

/// Pointwise algebra product: W1=U1V1+U3V4, W2=U2V2+U4V3, W3=U1V3+U3V2,
/// W4=U2V4+U4V1, with partials by the product rule. Symbolic when both
/// operands are analytic. Throws FrameMismatch.
ComponentMap product(const ComponentMap& f, const ComponentMap& g);

/// Taylor coefficients p_n with Phi = sum (zeta-zeta0)^n p_n (right) or
/// sum p_n (zeta-zeta0)^n (left). Size is order+1.
std::vector<Quat> taylor_expand(const RightGMap& m, Point3 p0, int order);
std::vector<Quat> taylor_expand(const LeftGMap& m, Point3 p0, int order);

/// Partial sum of the series at p, powers in closed form
/// (zeta-zeta0)^n = D1^n e1 + D2^n e2.
Quat eval_taylor(std::span<const Quat> coeffs, const Frame& fr, Point3 p0,
                 Point3 p, Side side);

struct ClassificationReport {
  bool right_g = false, left_g = false, h = false, right_h = false, left_h = false;
  double right_cr_residual = 0.0, left_cr_residual = 0.0;
  double h_residual = 0.0, right_h_residual = 0.0, left_h_residual = 0.0;
  int points_tested = 0;
};

/// Evaluates all five verdicts on quasi-random points outside the
/// degeneracy tube and enforces the implication lattice
/// right_G => right_H => H, left_G => left_H => H.
ClassificationReport classify(const ComponentMap& cm, const DomainBox& box,
                              int n_samples, double tol, std::uint64_t seed = 1);

/// Reconstruction of the four analytic component functions by polynomial
/// least squares on the appropriate projection (right: U1,U3 against xi1
/// and U2,U4 against xi2; left swaps the pattern for U3,U4). Fit uses the
/// first half of the samples; the residual is validated on all of them.
struct RepresentabilityFit {
  bool representable = false;
  double max_residual = 0.0;
  std::array<double, 4> component_residual{};
};

RepresentabilityFit fit_representation(const ComponentMap& cm, const DomainBox& box,
                                       Side side, int degree = 8, int n_samples = 120,
                                       double tol = 1e-7, std::uint64_t seed = 2);

}  // namespace biquat
