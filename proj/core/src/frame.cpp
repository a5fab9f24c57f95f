#include "biquat/frame.hpp"

#include <algorithm>
#include <cmath>

namespace biquat {

double length(Point3 p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

namespace {

// Rank of a 3x4 real matrix by Gaussian elimination with partial pivoting.
int real_rank_3x4(double (&m)[3][4]) {
  double scale = 0.0;
  for (auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double tol = 1e-10 * scale;

  int rank = 0;
  for (int col = 0; col < 4 && rank < 3; ++col) {
    int pivot = -1;
    double best = tol;
    for (int r = rank; r < 3; ++r) {
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        pivot = r;
      }
    }
    if (pivot < 0) continue;
    std::swap_ranges(m[pivot], m[pivot] + 4, m[rank]);
    for (int r = rank + 1; r < 3; ++r) {
      const double f = m[r][col] / m[rank][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ValidationReport validate(const Frame& fr) {
  ValidationReport rep;
  // Real coordinates of {1, i2, i3} w.r.t. {e1, i e1, e2, i e2}.
  double m[3][4] = {
      {1.0, 0.0, 1.0, 0.0},
      {fr.a1.real(), fr.a1.imag(), fr.a2.real(), fr.a2.imag()},
      {fr.b1.real(), fr.b1.imag(), fr.b2.real(), fr.b2.imag()},
  };
  rep.rank = real_rank_3x4(m);
  rep.independent = rep.rank == 3;
  rep.pencil1_degenerate = fr.a1.imag() == 0.0 && fr.b1.imag() == 0.0;
  rep.pencil2_degenerate = fr.a2.imag() == 0.0 && fr.b2.imag() == 0.0;
  rep.surjective = !rep.pencil1_degenerate && !rep.pencil2_degenerate;
  return rep;
}

std::pair<Complex, Complex> xi(const Frame& fr, Point3 p) {
  return {p.x + p.y * fr.a1 + p.z * fr.b1, p.x + p.y * fr.a2 + p.z * fr.b2};
}

Quat embed(const Frame& fr, Point3 p) {
  auto [x1, x2] = xi(fr, p);
  return {x1, x2, Complex{}, Complex{}};
}

namespace {

DegeneracyLine solve_line(Complex a, Complex b, int label) {
  if (a.imag() == 0.0 && b.imag() == 0.0) {
    throw DegeneratePencil("degeneracy_lines: Im a_k = Im b_k = 0, locus is a plane");
  }
  // Common direction of the planes x + y*Re(a) + z*Re(b) = 0 and
  // y*Im(a) + z*Im(b) = 0: cross product of their normals.
  const double n1[3] = {1.0, a.real(), b.real()};
  const double n2[3] = {0.0, a.imag(), b.imag()};
  double d[3] = {n1[1] * n2[2] - n1[2] * n2[1],
                 n1[2] * n2[0] - n1[0] * n2[2],
                 n1[0] * n2[1] - n1[1] * n2[0]};
  double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  for (double& v : d) v /= len;
  for (double v : d) {
    if (v != 0.0) {
      if (v < 0.0)
        for (double& w : d) w = -w;
      break;
    }
  }
  return {Point3{0, 0, 0}, {d[0], d[1], d[2]}, label};
}

}  // namespace

std::pair<DegeneracyLine, DegeneracyLine> degeneracy_lines(const Frame& fr) {
  return {solve_line(fr.a1, fr.b1, 1), solve_line(fr.a2, fr.b2, 2)};
}

bool is_degenerate(const Frame& fr, Point3 p, double tol) {
  auto [x1, x2] = xi(fr, p);
  return std::min(std::abs(x1), std::abs(x2)) <= tol;
}

ImageSamples image_domains(const Frame& fr, const DomainBox& box, int n) {
  ImageSamples out;
  if (n < 1) throw Error("image_domains: n must be >= 1");
  auto coord = [n](double lo, double hi, int idx) {
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(idx) / (n - 1);
  };
  out.d1.reserve(static_cast<size_t>(n) * n * n);
  out.d2.reserve(out.d1.capacity());
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        Point3 p{coord(box.min.x, box.max.x, ix), coord(box.min.y, box.max.y, iy),
                 coord(box.min.z, box.max.z, iz)};
        auto [x1, x2] = xi(fr, p);
        out.d1.push_back(x1);
        out.d2.push_back(x2);
      }
  return out;
}

}  // namespace biquat
