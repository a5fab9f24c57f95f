#pragma once

#include <array>
#include <utility>
#include <vector>

#include "biquat/quat.hpp"

namespace biquat {

struct Point3 {
  double x{}, y{}, z{};

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

double length(Point3 p);

/// Geometric configuration of the 3-dimensional span E3 = {x*1 + y*i2 + z*i3}
/// with i2 = a1*e1 + a2*e2 and i3 = b1*e1 + b2*e2.
struct Frame {
  Complex a1{}, a2{}, b1{}, b2{};

  friend bool operator==(const Frame&, const Frame&) = default;

  Quat i2() const { return {a1, a2, Complex{}, Complex{}}; }
  Quat i3() const { return {b1, b2, Complex{}, Complex{}}; }
};

struct ValidationReport {
  bool independent = false;   // {1, i2, i3} linearly independent over R
  bool surjective = false;    // xi_1 and xi_2 both map E3 onto all of C
  int rank = 0;               // real rank of the coordinate matrix (max 3)
  bool pencil1_degenerate = false;  // Im a1 = Im b1 = 0: L1 is a plane
  bool pencil2_degenerate = false;

  bool ok() const { return independent && surjective; }
};

/// Checks real-linear independence of {1, i2, i3} and the surjectivity
/// criterion: each pair (a_k, b_k) must contain a non-real number.
ValidationReport validate(const Frame& fr);

/// Projections xi_1 = x + y*a1 + z*b1 and xi_2 = x + y*a2 + z*b2.
std::pair<Complex, Complex> xi(const Frame& fr, Point3 p);

/// The element of E3 with coordinates p: xi_1*e1 + xi_2*e2.
Quat embed(const Frame& fr, Point3 p);

/// Line through the origin on which one of the projections vanishes;
/// points of the line correspond to non-invertible elements.
struct DegeneracyLine {
  Point3 anchor{};                    // always the origin
  std::array<double, 3> direction{};  // unit, first nonzero coordinate > 0
  int label = 1;                      // 1 for L1, 2 for L2
};

/// Throws DegeneratePencil if a solution set degenerates to a plane.
std::pair<DegeneracyLine, DegeneracyLine> degeneracy_lines(const Frame& fr);

/// True when min(|xi_1|, |xi_2|) <= tol, i.e. embed(fr,p) is (near-)singular.
bool is_degenerate(const Frame& fr, Point3 p, double tol);

struct DomainBox {
  Point3 min{}, max{};

  bool contains(Point3 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  Point3 center() const { return 0.5 * (min + max); }
};

struct ImageSamples {
  std::vector<Complex> d1, d2;  // xi_1 and xi_2 images of the grid
};

/// Images of an n^3 grid over the box under xi_1, xi_2 (the domains where
/// the component functions must be analytic). n == 1 samples the center.
ImageSamples image_domains(const Frame& fr, const DomainBox& box, int n);

/// Margin below which sample points are rejected as too close to the
/// degeneracy lines (they poison difference stencils and inverses).
inline constexpr double kDegeneracyTube = 1e-6;

}  // namespace biquat
