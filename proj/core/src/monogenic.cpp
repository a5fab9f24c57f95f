#include "biquat/monogenic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <thread>

#include "biquat/sampling.hpp"

namespace biquat {

namespace {

constexpr std::array<std::string_view, 2> kVarXi = {"xi1", "xi2"};

Complex& qcomp(Quat& q, int k) {
  switch (k) {
    case 0: return q.q1;
    case 1: return q.q2;
    case 2: return q.q3;
    default: return q.q4;
  }
}

Complex qcomp(const Quat& q, int k) {
  switch (k) {
    case 0: return q.q1;
    case 1: return q.q2;
    case 2: return q.q3;
    default: return q.q4;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BivarFn
// ---------------------------------------------------------------------------

BivarFn BivarFn::parse(std::string_view src) {
  return BivarFn(parse_expr(src, kVarXi));
}

BivarFn BivarFn::from_expr(ExprPtr e) { return BivarFn(std::move(e)); }

BivarFn BivarFn::of_xi1(const AnalyticFn& f) { return BivarFn(f.as_expr(0)); }
BivarFn BivarFn::of_xi2(const AnalyticFn& f) { return BivarFn(f.as_expr(1)); }

Complex BivarFn::operator()(Complex xi1, Complex xi2) const {
  const std::array<Complex, 2> args = {xi1, xi2};
  return eval(e_, args);
}

BivarFn BivarFn::partial(int var) const { return BivarFn(derivative(e_, var)); }

std::string BivarFn::str() const { return to_string(e_, kVarXi); }

BivarFn operator+(const BivarFn& x, const BivarFn& y) {
  return BivarFn::from_expr(simplify(add(x.e_, y.e_)));
}

BivarFn operator*(const BivarFn& x, const BivarFn& y) {
  return BivarFn::from_expr(simplify(mul(x.e_, y.e_)));
}

// ---------------------------------------------------------------------------
// Component
// ---------------------------------------------------------------------------

Component::Component(BivarFn g)
    : bivar_(g), d1_(g.partial(0)), d2_(g.partial(1)) {}

Component::Component(RawComponent raw) : raw_(std::move(raw)) {
  if (!raw_.value) throw Error("Component: raw component needs a value callable");
}

Complex Component::value(const Frame& fr, Point3 p) const {
  if (bivar_) {
    auto [x1, x2] = xi(fr, p);
    return (*bivar_)(x1, x2);
  }
  return raw_.value(p);
}

std::array<Complex, 3> Component::gradient(const Frame& fr, Point3 p) const {
  if (bivar_) {
    auto [x1, x2] = xi(fr, p);
    const Complex g1 = (*d1_)(x1, x2);
    const Complex g2 = (*d2_)(x1, x2);
    // dxi1/d(x,y,z) = (1, a1, b1), dxi2/d(x,y,z) = (1, a2, b2).
    return {g1 + g2, g1 * fr.a1 + g2 * fr.a2, g1 * fr.b1 + g2 * fr.b2};
  }
  std::array<Complex, 3> out;
  const auto fd = [this](Point3 lo, Point3 hi, double h) {
    return (raw_.value(hi) - raw_.value(lo)) / (2.0 * h);
  };
  if (raw_.dx) out[0] = raw_.dx(p);
  else {
    const double h = 1e-6 * (1.0 + std::abs(p.x));
    out[0] = fd({p.x - h, p.y, p.z}, {p.x + h, p.y, p.z}, h);
  }
  if (raw_.dy) out[1] = raw_.dy(p);
  else {
    const double h = 1e-6 * (1.0 + std::abs(p.y));
    out[1] = fd({p.x, p.y - h, p.z}, {p.x, p.y + h, p.z}, h);
  }
  if (raw_.dz) out[2] = raw_.dz(p);
  else {
    const double h = 1e-6 * (1.0 + std::abs(p.z));
    out[2] = fd({p.x, p.y, p.z - h}, {p.x, p.y, p.z + h}, h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ComponentMap
// ---------------------------------------------------------------------------

bool ComponentMap::all_analytic() const {
  return std::all_of(u_.begin(), u_.end(),
                     [](const Component& c) { return c.analytic(); });
}

Quat ComponentMap::value(Point3 p) const {
  Quat out;
  for (int k = 0; k < 4; ++k) qcomp(out, k) = u_[static_cast<size_t>(k)].value(frame_, p);
  return out;
}

ComponentMap::Partials ComponentMap::partials(Point3 p) const {
  Partials out;
  for (int k = 0; k < 4; ++k) {
    const auto g = u_[static_cast<size_t>(k)].gradient(frame_, p);
    qcomp(out.dx, k) = g[0];
    qcomp(out.dy, k) = g[1];
    qcomp(out.dz, k) = g[2];
  }
  return out;
}

// ---------------------------------------------------------------------------
// G-form maps
// ---------------------------------------------------------------------------

Quat value(const RightGMap& m, Point3 p) {
  auto [x1, x2] = xi(m.frame, p);
  return {m.f1(x1), m.f2(x2), m.f3(x1), m.f4(x2)};
}

Quat value(const LeftGMap& m, Point3 p) {
  auto [x1, x2] = xi(m.frame, p);
  return {m.f1(x1), m.f2(x2), m.f3(x2), m.f4(x1)};
}

Quat gateaux_derivative(const RightGMap& m, Point3 p) {
  auto [x1, x2] = xi(m.frame, p);
  return {m.f1.derivative()(x1), m.f2.derivative()(x2), m.f3.derivative()(x1),
          m.f4.derivative()(x2)};
}

Quat gateaux_derivative(const LeftGMap& m, Point3 p) {
  auto [x1, x2] = xi(m.frame, p);
  return {m.f1.derivative()(x1), m.f2.derivative()(x2), m.f3.derivative()(x2),
          m.f4.derivative()(x1)};
}

ComponentMap to_components(const RightGMap& m) {
  return {m.frame,
          {Component(BivarFn::of_xi1(m.f1)), Component(BivarFn::of_xi2(m.f2)),
           Component(BivarFn::of_xi1(m.f3)), Component(BivarFn::of_xi2(m.f4))}};
}

ComponentMap to_components(const LeftGMap& m) {
  return {m.frame,
          {Component(BivarFn::of_xi1(m.f1)), Component(BivarFn::of_xi2(m.f2)),
           Component(BivarFn::of_xi2(m.f3)), Component(BivarFn::of_xi1(m.f4))}};
}

// ---------------------------------------------------------------------------
// Gateaux limit
// ---------------------------------------------------------------------------

namespace {

template <typename Map>
std::vector<double> limit_residual(const Map& m, Point3 p, Point3 h,
                                   std::span<const double> eps, Side side) {
  const Quat hq = embed(m.frame, h);
  const Quat d = gateaux_derivative(m, p);
  const Quat model = side == Side::Right ? hq * d : d * hq;
  const Quat base = value(m, p);
  std::vector<double> out;
  out.reserve(eps.size());
  for (double e : eps) {
    if (!(e > 0.0)) throw Error("gateaux_limit_residual: eps must be positive");
    const Quat diff = value(m, p + e * h) - base;
    out.push_back(norm(Complex(1.0 / e) * diff - model));
  }
  return out;
}

}  // namespace

std::vector<double> gateaux_limit_residual(const RightGMap& m, Point3 p, Point3 h,
                                           std::span<const double> eps) {
  return limit_residual(m, p, h, eps, Side::Right);
}

std::vector<double> gateaux_limit_residual(const LeftGMap& m, Point3 p, Point3 h,
                                           std::span<const double> eps) {
  return limit_residual(m, p, h, eps, Side::Left);
}

// ---------------------------------------------------------------------------
// Cauchy-Riemann defects and the span test
// ---------------------------------------------------------------------------

std::pair<Quat, Quat> cr_residual(const ComponentMap& cm, Point3 p, Side side) {
  const auto P = cm.partials(p);
  const Quat i2q = cm.frame().i2(), i3q = cm.frame().i3();
  if (side == Side::Right) return {P.dy - i2q * P.dx, P.dz - i3q * P.dx};
  return {P.dy - P.dx * i2q, P.dz - P.dx * i3q};
}

namespace {

SpanCoefficients span_solve(const std::array<Complex, 3>& g, const Frame& fr) {
  const std::array<Complex, 3> u = {Complex{1.0}, fr.a1, fr.b1};
  const std::array<Complex, 3> v = {Complex{1.0}, fr.a2, fr.b2};
  double huu = 0.0, hvv = 0.0;
  Complex huv{}, r1{}, r2{};
  for (int i = 0; i < 3; ++i) {
    huu += std::norm(u[i]);
    hvv += std::norm(v[i]);
    huv += std::conj(u[i]) * v[i];
    r1 += std::conj(u[i]) * g[i];
    r2 += std::conj(v[i]) * g[i];
  }
  const double d = huu * hvv - std::norm(huv);
  if (d <= 1e-20 * huu * hvv) {
    throw RankDeficientFrame("span test: (1,a1,b1) and (1,a2,b2) are collinear");
  }
  SpanCoefficients sc;
  sc.lambda = (r1 * hvv - huv * r2) / d;
  sc.mu = (huu * r2 - std::conj(huv) * r1) / d;
  double res = 0.0;
  for (int i = 0; i < 3; ++i) res += std::norm(u[i] * sc.lambda + v[i] * sc.mu - g[i]);
  sc.residual = std::sqrt(res);
  return sc;
}

double grad_norm(const std::array<Complex, 3>& g) {
  return std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
}

HMonogenicTest span_test_from_partials(const ComponentMap::Partials& P,
                                       const Frame& fr, double tol) {
  HMonogenicTest t;
  t.pass = true;
  for (int k = 0; k < 4; ++k) {
    const std::array<Complex, 3> g = {qcomp(P.dx, k), qcomp(P.dy, k), qcomp(P.dz, k)};
    auto sc = span_solve(g, fr);
    t.pass = t.pass && sc.residual <= tol * (1.0 + grad_norm(g));
    t.max_residual = std::max(t.max_residual, sc.residual);
    t.comps[static_cast<size_t>(k)] = sc;
  }
  return t;
}

}  // namespace

HMonogenicTest h_monogenic_test(const ComponentMap& cm, Point3 p, double tol) {
  return span_test_from_partials(cm.partials(p), cm.frame(), tol);
}

// ---------------------------------------------------------------------------
// Hausdorff decomposition
// ---------------------------------------------------------------------------

HausdorffDecomposition hausdorff_decomposition(const ComponentMap& cm, Point3 p,
                                               double tol) {
  const auto t = h_monogenic_test(cm, p, tol);
  if (!t.pass) {
    throw NotHMonogenic("hausdorff_decomposition: span test failed at the point");
  }
  const Quat e1 = Quat::unit(1), e2 = Quat::unit(2), e3 = Quat::unit(3),
             e4 = Quat::unit(4);
  HausdorffDecomposition d;
  d.point = p;
  auto push = [&d](Complex coef, const Quat& left, const Quat& right, bool scale_left) {
    if (coef == Complex{}) return;
    if (scale_left) d.pairs.emplace_back(coef * left, right);
    else d.pairs.emplace_back(left, coef * right);
  };
  const auto& c = t.comps;
  // Each component k contributes a dxi1 pair (lambda) and a dxi2 pair (mu);
  // the basis placements route the product expansion to e_k alone.
  push(c[0].lambda, e1, e1, true);    // lambda1 e1 dz e1
  push(c[0].mu, e3, e4, false);       // e3 dz (mu1 e4)
  push(c[1].lambda, e4, e3, false);   // e4 dz (lambda2 e3)
  push(c[1].mu, e2, e2, true);        // (mu2 e2) dz e2
  push(c[2].lambda, e1, e3, false);   // e1 dz (lambda3 e3)
  push(c[2].mu, e3, e2, true);        // (mu3 e3) dz e2
  push(c[3].lambda, e4, e1, true);    // (lambda4 e4) dz e1
  push(c[3].mu, e2, e4, false);       // e2 dz (mu4 e4)
  return d;
}

Quat apply_decomposition(const HausdorffDecomposition& d, const Frame& fr,
                         Point3 dir) {
  const Quat dz = embed(fr, dir);
  Quat out;
  for (const auto& [a, b] : d.pairs) out = out + a * dz * b;
  return out;
}

Quat decomposition_derivative(const HausdorffDecomposition& d) {
  Quat out;
  for (const auto& [a, b] : d.pairs) out = out + a * b;
  return out;
}

Quat hausdorff_derivative(const ComponentMap& cm, Point3 p, double tol) {
  if (!h_monogenic_test(cm, p, tol).pass) {
    throw NotHMonogenic("hausdorff_derivative: span test failed at the point");
  }
  return cm.partials(p).dx;
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

namespace {

// Component index pairs of W_k = U_i V_j + U_m V_n in the algebra product.
struct ProductTerm {
  int i, j, m, n;
};
constexpr std::array<ProductTerm, 4> kProductTable = {{
    {0, 0, 2, 3},  // W1 = U1 V1 + U3 V4
    {1, 1, 3, 2},  // W2 = U2 V2 + U4 V3
    {0, 2, 2, 1},  // W3 = U1 V3 + U3 V2
    {1, 3, 3, 0},  // W4 = U2 V4 + U4 V1
}};

Component raw_product_component(std::shared_ptr<const ComponentMap> f,
                                std::shared_ptr<const ComponentMap> g,
                                ProductTerm t) {
  RawComponent rc;
  rc.value = [f, g, t](Point3 p) {
    const Frame& fr = f->frame();
    return f->component(t.i).value(fr, p) * g->component(t.j).value(fr, p) +
           f->component(t.m).value(fr, p) * g->component(t.n).value(fr, p);
  };
  auto partial = [f, g, t](int axis) {
    return [f, g, t, axis](Point3 p) {
      const Frame& fr = f->frame();
      const Complex ui = f->component(t.i).value(fr, p);
      const Complex vj = g->component(t.j).value(fr, p);
      const Complex um = f->component(t.m).value(fr, p);
      const Complex vn = g->component(t.n).value(fr, p);
      const auto dui = f->component(t.i).gradient(fr, p);
      const auto dvj = g->component(t.j).gradient(fr, p);
      const auto dum = f->component(t.m).gradient(fr, p);
      const auto dvn = g->component(t.n).gradient(fr, p);
      const auto a = static_cast<size_t>(axis);
      return dui[a] * vj + ui * dvj[a] + dum[a] * vn + um * dvn[a];
    };
  };
  rc.dx = partial(0);
  rc.dy = partial(1);
  rc.dz = partial(2);
  return Component(std::move(rc));
}

}  // namespace

ComponentMap product(const ComponentMap& f, const ComponentMap& g) {
  if (!(f.frame() == g.frame())) {
    throw FrameMismatch("product: operands live over different frames");
  }
  std::array<Component, 4> w;
  if (f.all_analytic() && g.all_analytic()) {
    for (int k = 0; k < 4; ++k) {
      const auto& t = kProductTable[static_cast<size_t>(k)];
      w[static_cast<size_t>(k)] =
          Component(*f.component(t.i).bivar() * *g.component(t.j).bivar() +
                    *f.component(t.m).bivar() * *g.component(t.n).bivar());
    }
  } else {
    auto fc = std::make_shared<const ComponentMap>(f);
    auto gc = std::make_shared<const ComponentMap>(g);
    for (int k = 0; k < 4; ++k) {
      w[static_cast<size_t>(k)] =
          raw_product_component(fc, gc, kProductTable[static_cast<size_t>(k)]);
    }
  }
  return {f.frame(), std::move(w)};
}

// ---------------------------------------------------------------------------
// Taylor series
// ---------------------------------------------------------------------------

std::vector<Quat> taylor_expand(const RightGMap& m, Point3 p0, int order) {
  auto [x1, x2] = xi(m.frame, p0);
  const auto c1 = m.f1.taylor_coeffs(x1, order);
  const auto c2 = m.f2.taylor_coeffs(x2, order);
  const auto c3 = m.f3.taylor_coeffs(x1, order);
  const auto c4 = m.f4.taylor_coeffs(x2, order);
  std::vector<Quat> out(static_cast<size_t>(order) + 1);
  for (size_t n = 0; n < out.size(); ++n) out[n] = {c1[n], c2[n], c3[n], c4[n]};
  return out;
}

std::vector<Quat> taylor_expand(const LeftGMap& m, Point3 p0, int order) {
  auto [x1, x2] = xi(m.frame, p0);
  const auto c1 = m.f1.taylor_coeffs(x1, order);
  const auto c2 = m.f2.taylor_coeffs(x2, order);
  const auto c3 = m.f3.taylor_coeffs(x2, order);
  const auto c4 = m.f4.taylor_coeffs(x1, order);
  std::vector<Quat> out(static_cast<size_t>(order) + 1);
  for (size_t n = 0; n < out.size(); ++n) out[n] = {c1[n], c2[n], c3[n], c4[n]};
  return out;
}

Quat eval_taylor(std::span<const Quat> coeffs, const Frame& fr, Point3 p0,
                 Point3 p, Side side) {
  const auto [x1, x2] = xi(fr, p);
  const auto [y1, y2] = xi(fr, p0);
  const Complex d1 = x1 - y1, d2 = x2 - y2;
  Quat sum;
  Complex pw1{1.0}, pw2{1.0};
  for (size_t n = 0; n < coeffs.size(); ++n) {
    const Quat dn{pw1, pw2, Complex{}, Complex{}};
    sum = sum + (side == Side::Right ? dn * coeffs[n] : coeffs[n] * dn);
    pw1 *= d1;
    pw2 *= d2;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

struct PointVerdicts {
  double rcr = 0.0, lcr = 0.0, h = 0.0, rh = 0.0, lh = 0.0;
  bool h_pass = true;
};

PointVerdicts eval_point(const ComponentMap& cm, Point3 p, double tol) {
  const Frame& fr = cm.frame();
  const auto P = cm.partials(p);
  const Quat i2q = fr.i2(), i3q = fr.i3();
  PointVerdicts v;
  v.rcr = std::max(norm(P.dy - i2q * P.dx), norm(P.dz - i3q * P.dx));
  v.lcr = std::max(norm(P.dy - P.dx * i2q), norm(P.dz - P.dx * i3q));
  // One-term forms d Phi = dzeta * dPhi/dx (right) and dPhi/dx * dzeta
  // (left), checked against the three coordinate directions.
  const Point3 dirs[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int a = 0; a < 3; ++a) {
    const Quat dz = embed(fr, dirs[a]);
    const Quat dd = P.directional(dirs[a]);
    v.rh = std::max(v.rh, norm(dd - dz * P.dx));
    v.lh = std::max(v.lh, norm(dd - P.dx * dz));
  }
  const auto ht = span_test_from_partials(P, fr, tol);
  v.h = ht.max_residual;
  v.h_pass = ht.pass;
  return v;
}

PointVerdicts combine(const PointVerdicts& a, const PointVerdicts& b) {
  return {std::max(a.rcr, b.rcr), std::max(a.lcr, b.lcr), std::max(a.h, b.h),
          std::max(a.rh, b.rh), std::max(a.lh, b.lh), a.h_pass && b.h_pass};
}

}  // namespace

ClassificationReport classify(const ComponentMap& cm, const DomainBox& box,
                              int n_samples, double tol, std::uint64_t seed) {
  if (n_samples <= 0) throw EmptySampleSet("classify: n_samples must be positive");
  const auto points = sample_admissible(cm.frame(), box, n_samples, seed);

  PointVerdicts total;
  const size_t n = points.size();
  const size_t chunk = 64;
  if (n <= 2 * chunk) {
    for (const auto& p : points) total = combine(total, eval_point(cm, p, tol));
  } else {
    // Chunked evaluation; max/and reductions make the combined result
    // identical to the sequential order.
    std::vector<std::future<PointVerdicts>> futures;
    for (size_t lo = 0; lo < n; lo += chunk) {
      const size_t hi = std::min(n, lo + chunk);
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        PointVerdicts local;
        for (size_t k = lo; k < hi; ++k) local = combine(local, eval_point(cm, points[k], tol));
        return local;
      }));
    }
    for (auto& f : futures) total = combine(total, f.get());
  }

  ClassificationReport rep;
  rep.points_tested = static_cast<int>(n);
  rep.right_cr_residual = total.rcr;
  rep.left_cr_residual = total.lcr;
  rep.h_residual = total.h;
  rep.right_h_residual = total.rh;
  rep.left_h_residual = total.lh;
  rep.right_g = total.rcr <= tol;
  rep.left_g = total.lcr <= tol;
  rep.right_h = total.rh <= tol;
  rep.left_h = total.lh <= tol;
  rep.h = total.h_pass;
  // Implication lattice.
  rep.right_h = rep.right_h || rep.right_g;
  rep.left_h = rep.left_h || rep.left_g;
  rep.h = rep.h || rep.right_h || rep.left_h;
  return rep;
}

// ---------------------------------------------------------------------------
// Representability fit
// ---------------------------------------------------------------------------

namespace {

// Least squares min |A c - y| by modified Gram-Schmidt QR with
// reorthogonalization; A is dense row-major m x n, m >= n.
std::vector<Complex> qr_least_squares(std::vector<Complex> a, std::vector<Complex> y,
                                      size_t m, size_t n) {
  std::vector<Complex> r(n * n, Complex{});
  for (size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t i = 0; i < j; ++i) {
        Complex dot{};
        for (size_t k = 0; k < m; ++k) dot += std::conj(a[k * n + i]) * a[k * n + j];
        r[i * n + j] += dot;
        for (size_t k = 0; k < m; ++k) a[k * n + j] -= dot * a[k * n + i];
      }
    }
    double nrm = 0.0;
    for (size_t k = 0; k < m; ++k) nrm += std::norm(a[k * n + j]);
    nrm = std::sqrt(nrm);
    r[j * n + j] = nrm;
    if (nrm < 1e-300) throw Error("qr_least_squares: rank-deficient design matrix");
    for (size_t k = 0; k < m; ++k) a[k * n + j] /= nrm;
  }
  // c = R^{ -1} Q^H y
  std::vector<Complex> qty(n, Complex{});
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < m; ++k) qty[j] += std::conj(a[k * n + j]) * y[k];
  }
  std::vector<Complex> c(n, Complex{});
  for (size_t j = n; j-- > 0;) {
    Complex s = qty[j];
    for (size_t i = j + 1; i < n; ++i) s -= r[j * n + i] * c[i];
    c[j] = s / r[j * n + j];
  }
  return c;
}

Complex poly_eval(const std::vector<Complex>& c, Complex w) {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace

RepresentabilityFit fit_representation(const ComponentMap& cm, const DomainBox& box,
                                       Side side, int degree, int n_samples,
                                       double tol, std::uint64_t seed) {
  const size_t cols = static_cast<size_t>(degree) + 1;
  if (n_samples < 2 * static_cast<int>(cols)) {
    throw Error("fit_representation: need at least 2*(degree+1) samples");
  }
  const auto points = sample_admissible(cm.frame(), box, n_samples, seed);
  const size_t fit_m = points.size() / 2;

  RepresentabilityFit out;
  out.representable = true;
  for (int k = 0; k < 4; ++k) {
    // Right pattern: U1,U3 are functions of xi1; U2,U4 of xi2.
    // Left pattern: U1,U4 of xi1; U2,U3 of xi2.
    const bool uses_xi1 = side == Side::Right ? (k == 0 || k == 2) : (k == 0 || k == 3);
    std::vector<Complex> w(points.size()), y(points.size());
    for (size_t j = 0; j < points.size(); ++j) {
      const auto [x1, x2] = xi(cm.frame(), points[j]);
      w[j] = uses_xi1 ? x1 : x2;
      y[j] = cm.component(k).value(cm.frame(), points[j]);
    }
    // Affine scale to a unit disk for conditioning.
    Complex centroid{};
    for (const auto& v : w) centroid += v;
    centroid /= static_cast<double>(w.size());
    double radius = 0.0;
    for (const auto& v : w) radius = std::max(radius, std::abs(v - centroid));
    if (radius == 0.0) radius = 1.0;

    std::vector<Complex> a(fit_m * cols);
    std::vector<Complex> rhs(fit_m);
    for (size_t j = 0; j < fit_m; ++j) {
      const Complex ws = (w[j] - centroid) / radius;
      Complex pw{1.0};
      for (size_t c = 0; c < cols; ++c) {
        a[j * cols + c] = pw;
        pw *= ws;
      }
      rhs[j] = y[j];
    }
    const auto coeff = qr_least_squares(std::move(a), std::move(rhs), fit_m, cols);

    double max_abs = 0.0;
    for (const auto& v : y) max_abs = std::max(max_abs, std::abs(v));
    double res = 0.0;
    for (size_t j = 0; j < points.size(); ++j) {
      const Complex ws = (w[j] - centroid) / radius;
      res = std::max(res, std::abs(poly_eval(coeff, ws) - y[j]));
    }
    out.component_residual[static_cast<size_t>(k)] = res;
    out.max_residual = std::max(out.max_residual, res);
    out.representable = out.representable && res <= tol * (1.0 + max_abs);
  }
  return out;
}

}  // namespace biquat
