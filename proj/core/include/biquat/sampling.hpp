#pragma once

#include <cstdint>
#include <vector>

#include "biquat/frame.hpp"

namespace biquat {

/// Halton low-discrepancy point in [0,1)^3 for index i (bases 2, 3, 5).
inline double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline Point3 halton_point(std::uint64_t i, const DomainBox& box) {
  const double u = halton(i, 2), v = halton(i, 3), w = halton(i, 5);
  return {box.min.x + u * (box.max.x - box.min.x),
          box.min.y + v * (box.max.y - box.min.y),
          box.min.z + w * (box.max.z - box.min.z)};
}

/// n quasi-random points in the box; `seed` offsets the sequence start.
inline std::vector<Point3> sample_box(const DomainBox& box, int n,
                                      std::uint64_t seed) {
  std::vector<Point3> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.push_back(halton_point(seed + 1 + static_cast<std::uint64_t>(k), box));
  }
  return out;
}

/// As sample_box, but skips points inside the degeneracy tube
/// min(|xi1|,|xi2|) <= tube. Throws EmptySampleSet if the sweep cannot
/// collect n admissible points.
inline std::vector<Point3> sample_admissible(const Frame& fr, const DomainBox& box,
                                             int n, std::uint64_t seed,
                                             double tube = kDegeneracyTube) {
  std::vector<Point3> out;
  out.reserve(static_cast<size_t>(n));
  std::uint64_t i = seed + 1;
  const std::uint64_t budget = 1000u * static_cast<std::uint64_t>(n) + 10000u;
  for (std::uint64_t tries = 0; static_cast<int>(out.size()) < n; ++tries, ++i) {
    if (tries > budget) {
      throw EmptySampleSet("sample_admissible: box lies inside the degeneracy tube");
    }
    Point3 p = halton_point(i, box);
    if (!is_degenerate(fr, p, tube)) out.push_back(p);
  }
  return out;
}

}  // namespace biquat
