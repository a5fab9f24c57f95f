#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "biquat/frame.hpp"

namespace biquat {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;
  explicit GaussLegendre(int n);
};

struct Polyline {
  std::vector<Point3> vertices;
  bool closed = false;  // an implicit last->first segment is appended

  double length() const;
};

struct ParametricCurve {
  std::function<Point3(double)> position;  // t in [0,1]
  std::function<Point3(double)> velocity;
  int n_nodes = 16;  // number of quadrature sub-intervals of [0,1]
  bool closed = false;
};

using Path = std::variant<Polyline, ParametricCurve>;

using PointFn = std::function<Quat(Point3)>;

/// Integral with the line element on the left: sum of
/// w * (dx + i2 dy + i3 dz) * Psi over the quadrature nodes.
Quat integral_dzeta_left(const Path& path, const PointFn& f, const Frame& fr,
                         int nodes_per_segment = 16);

/// Mirror image with the multiplication order Psi * dzeta; differs from the
/// left variant in general because the algebra is non-commutative.
Quat integral_dzeta_right(const Path& path, const PointFn& f, const Frame& fr,
                          int nodes_per_segment = 16);

struct Triangle {
  Point3 v0, v1, v2;

  double area() const;
  double perimeter() const;
};

/// Closed 3-segment boundary v0 -> v1 -> v2 -> v0.
/// Throws DegenerateTriangle when area <= 1e-14 * (longest edge)^2.
Polyline triangle_boundary(const Triangle& t);

/// Norm of the boundary integral (Right: dzeta on the left of Phi;
/// Left: Phi on the left of dzeta). Zero for maps monogenic on the
/// corresponding side.
double morera_residual(const PointFn& f, const Triangle& t, const Frame& fr,
                       Side side, int nodes_per_edge = 16);

struct Lemma1Result {
  double lhs_left = 0.0;   // | int dzeta Psi |
  double lhs_right = 0.0;  // | int Psi dzeta |
  double rhs = 0.0;        // c_used * int |Psi| |dzeta|
  double c_used = 0.0;

  bool holds() const { return lhs_left <= rhs && lhs_right <= rhs; }
};

/// Norm estimate for both integral variants: |dzeta| is the component norm
/// of the embedded direction times arc length, and c_used =
/// max(1, |i2|, |i3|).
Lemma1Result lemma1_check(const Path& path, const PointFn& f, const Frame& fr,
                          int nodes_per_segment = 16);

}  // namespace biquat
