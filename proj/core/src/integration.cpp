#include "biquat/integration.hpp"

#include <algorithm>
#include <cmath>

namespace biquat {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw Error("GaussLegendre: need at least one node");
  nodes.resize(static_cast<size_t>(n));
  weights.resize(static_cast<size_t>(n));
  // Newton iteration on the Legendre polynomial, symmetric pairs at once.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const size_t a = static_cast<size_t>(i);
    const size_t b = static_cast<size_t>(n - 1 - i);
    nodes[a] = -x;
    nodes[b] = x;
    weights[a] = weights[b] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double Polyline::length() const {
  double sum = 0.0;
  for (size_t k = 0; k + 1 < vertices.size(); ++k) {
    sum += biquat::length(vertices[k + 1] - vertices[k]);
  }
  if (closed && vertices.size() > 1 && !(vertices.front() == vertices.back())) {
    sum += biquat::length(vertices.front() - vertices.back());
  }
  return sum;
}

namespace {

// Visits quadrature nodes of the path: callback(point, velocity, weight)
// where the weight already includes the parameter interval length.
template <typename F>
void for_quadrature(const Path& path, int nodes_per_segment, F&& visit) {
  const GaussLegendre gl(nodes_per_segment);
  if (const auto* poly = std::get_if<Polyline>(&path)) {
    if (poly->vertices.size() < 2) {
      throw Error("integral: polyline needs at least two vertices");
    }
    auto segment = [&](Point3 a, Point3 b) {
      const Point3 d = b - a;
      for (size_t q = 0; q < gl.nodes.size(); ++q) {
        const double t = 0.5 * (gl.nodes[q] + 1.0);
        visit(a + t * d, d, 0.5 * gl.weights[q]);
      }
    };
    for (size_t k = 0; k + 1 < poly->vertices.size(); ++k) {
      segment(poly->vertices[k], poly->vertices[k + 1]);
    }
    if (poly->closed && !(poly->vertices.front() == poly->vertices.back())) {
      segment(poly->vertices.back(), poly->vertices.front());
    }
    return;
  }
  const auto& curve = std::get<ParametricCurve>(path);
  if (!curve.position || !curve.velocity) {
    throw Error("integral: parametric curve needs position and velocity");
  }
  const int m = std::max(1, curve.n_nodes);
  const double h = 1.0 / m;
  for (int s = 0; s < m; ++s) {
    const double lo = s * h;
    for (size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = lo + 0.5 * h * (gl.nodes[q] + 1.0);
      visit(curve.position(t), curve.velocity(t), 0.5 * h * gl.weights[q]);
    }
  }
}

}  // namespace

Quat integral_dzeta_left(const Path& path, const PointFn& f, const Frame& fr,
                         int nodes_per_segment) {
  Quat sum;
  for_quadrature(path, nodes_per_segment, [&](Point3 p, Point3 vel, double w) {
    sum = sum + Complex(w) * (embed(fr, vel) * f(p));
  });
  return sum;
}

Quat integral_dzeta_right(const Path& path, const PointFn& f, const Frame& fr,
                          int nodes_per_segment) {
  Quat sum;
  for_quadrature(path, nodes_per_segment, [&](Point3 p, Point3 vel, double w) {
    sum = sum + Complex(w) * (f(p) * embed(fr, vel));
  });
  return sum;
}

double Triangle::area() const {
  const Point3 u = v1 - v0, w = v2 - v0;
  const double cx = u.y * w.z - u.z * w.y;
  const double cy = u.z * w.x - u.x * w.z;
  const double cz = u.x * w.y - u.y * w.x;
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

double Triangle::perimeter() const {
  return length(v1 - v0) + length(v2 - v1) + length(v0 - v2);
}

Polyline triangle_boundary(const Triangle& t) {
  const double scale =
      std::max({length(t.v1 - t.v0), length(t.v2 - t.v1), length(t.v0 - t.v2)});
  if (t.area() <= 1e-14 * scale * scale) {
    throw DegenerateTriangle("triangle_boundary: vertices are (near-)collinear");
  }
  return Polyline{{t.v0, t.v1, t.v2}, true};
}

double morera_residual(const PointFn& f, const Triangle& t, const Frame& fr,
                       Side side, int nodes_per_edge) {
  const Path boundary = triangle_boundary(t);
  const Quat integral = side == Side::Right
                            ? integral_dzeta_left(boundary, f, fr, nodes_per_edge)
                            : integral_dzeta_right(boundary, f, fr, nodes_per_edge);
  return norm(integral);
}

Lemma1Result lemma1_check(const Path& path, const PointFn& f, const Frame& fr,
                          int nodes_per_segment) {
  Lemma1Result out;
  out.c_used = std::max({1.0, norm(fr.i2()), norm(fr.i3())});
  Quat left, right;
  double arc = 0.0;
  for_quadrature(path, nodes_per_segment, [&](Point3 p, Point3 vel, double w) {
    const Quat dz = embed(fr, vel);
    const Quat v = f(p);
    left = left + Complex(w) * (dz * v);
    right = right + Complex(w) * (v * dz);
    arc += w * norm(v) * norm(dz);
  });
  out.lhs_left = norm(left);
  out.lhs_right = norm(right);
  out.rhs = out.c_used * arc;
  return out;
}

}  // namespace biquat
