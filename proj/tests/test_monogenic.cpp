#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "biquat/monogenic.hpp"
#include "biquat/sampling.hpp"
#include "testutil.hpp"

using namespace biquat;
using testutil::dist;
using testutil::Rng;

namespace {

const DomainBox kBox{{-1, -1, -1}, {1, 1, 1}};

RightGMap squaring_map(const Frame& fr) {
  return {fr, AnalyticFn::monomial(2), AnalyticFn::monomial(2),
          AnalyticFn::constant({}), AnalyticFn::constant({})};
}

RightGMap identity_map(const Frame& fr) {
  return {fr, AnalyticFn::identity(), AnalyticFn::identity(),
          AnalyticFn::constant({}), AnalyticFn::constant({})};
}

ComponentMap broken_linear_map(const Frame& fr) {
  RawComponent u1;
  u1.value = [](Point3 p) { return Complex{p.x}; };
  return {fr, {Component(u1), Component(), Component(), Component()}};
}

}  // namespace

TEST_CASE("map values") {
  Rng rng(211);
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("identity in the right form reproduces the embedding") {
    const RightGMap m = identity_map(fr);
    for (int k = 0; k < 20; ++k) {
      const Point3 p = rng.point_in(kBox);
      CHECK(dist(value(m, p), embed(fr, p)) == 0.0);
    }
  }
  SUBCASE("squaring map equals the algebra square") {
    const RightGMap m = squaring_map(fr);
    for (int k = 0; k < 20; ++k) {
      const Point3 p = rng.point_in(kBox);
      const Quat z = embed(fr, p);
      CHECK(dist(value(m, p), z * z) <= 1e-14 * (1.0 + norm(z * z)));
    }
  }
  SUBCASE("component form matches a hand-built evaluation") {
    const ComponentMap cm = testutil::mixed_map();
    for (int k = 0; k < 10; ++k) {
      const Point3 p = rng.point_in(kBox);
      const auto [x1, x2] = xi(fr, p);
      const Quat expected{std::exp(x1) + x2 * x2, x1 * std::sin(x2), x2 * x2,
                          std::exp(x1)};
      CHECK(dist(cm.value(p), expected) <= 1e-13 * (1.0 + norm(expected)));
    }
  }
  SUBCASE("left form swaps the e3/e4 variables") {
    const LeftGMap m{fr, AnalyticFn::constant({}), AnalyticFn::constant({}),
                     AnalyticFn::identity(), AnalyticFn::identity()};
    const Point3 p{0.3, -0.2, 0.7};
    const auto [x1, x2] = xi(fr, p);
    const Quat v = value(m, p);
    CHECK(std::abs(v.q3 - x2) == 0.0);
    CHECK(std::abs(v.q4 - x1) == 0.0);
  }
}

TEST_CASE("gateaux derivative and the defining limit") {
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("squaring map differentiates to 2*zeta") {
    const RightGMap m = squaring_map(fr);
    const Point3 p{0.4, 0.1, -0.3};
    CHECK(dist(gateaux_derivative(m, p), Complex{2.0} * embed(fr, p)) <= 1e-14);
  }
  SUBCASE("constant maps differentiate to zero") {
    const RightGMap m{fr, AnalyticFn::constant({1.0, 2.0}), AnalyticFn::constant({3.0, 0}),
                      AnalyticFn::constant({}), AnalyticFn::constant({})};
    CHECK(norm(gateaux_derivative(m, {0.2, 0.5, -0.1})) == 0.0);
  }
  SUBCASE("linear maps have exactly zero residual on dyadic data") {
    // Dyadic frame, point, and direction keep every step of the quotient
    // exact in binary floating point.
    const Frame dyadic{{0.5, 0.5}, {0.25, -0.5}, {0.0, 0.25}, {1.0, 0.5}};
    const RightGMap m = identity_map(dyadic);
    const Point3 p{1.0, 0.5, -0.25}, h{0.5, 1.0, 0.25};
    std::vector<double> eps;
    for (int k = 1; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
    for (double r : gateaux_limit_residual(m, p, h, eps)) CHECK(r == 0.0);
  }
  SUBCASE("squaring map residual halves with eps") {
    const RightGMap m = squaring_map(fr);
    const Point3 p{0.3, -0.4, 0.2}, h{0.7, 0.2, -0.1};
    const std::vector<double> eps{1e-1, 5e-2, 2.5e-2};
    const auto r = gateaux_limit_residual(m, p, h, eps);
    CHECK(r[0] > 0.0);
    CHECK(r[1] == doctest::Approx(0.5 * r[0]).epsilon(1e-6));
    CHECK(r[2] == doctest::Approx(0.5 * r[1]).epsilon(1e-6));
  }
  SUBCASE("zero direction gives zero residual") {
    const RightGMap m = squaring_map(fr);
    const auto r = gateaux_limit_residual(m, {0.3, 0.1, 0.2}, {0, 0, 0},
                                          std::vector<double>{1e-2});
    CHECK(r[0] == 0.0);
  }
  SUBCASE("left maps use the mirrored order") {
    Rng rng(223);
    const LeftGMap m = testutil::random_left_map(rng, 3, 0.5);
    const Point3 p{0.2, 0.3, -0.1}, h{0.5, -0.5, 0.25};
    const std::vector<double> eps{1e-3, 1e-4, 1e-5};
    const auto r = gateaux_limit_residual(m, p, h, eps);
    CHECK(r[2] <= r[0] + 1e-12);
    CHECK(r[0] <= 1e-1);
  }
}

TEST_CASE("cauchy-riemann residuals") {
  Rng rng(227);
  SUBCASE("right-form maps satisfy the right conditions exactly") {
    for (int trial = 0; trial < 10; ++trial) {
      const RightGMap m = testutil::random_right_map(rng);
      const auto cm = to_components(m);
      const auto pts = sample_admissible(m.frame, kBox, 20, 7);
      for (const auto& p : pts) {
        const auto [ry, rz] = cr_residual(cm, p, Side::Right);
        CHECK(norm(ry) <= 1e-8);
        CHECK(norm(rz) <= 1e-8);
      }
    }
  }
  SUBCASE("left-form maps satisfy the left conditions exactly") {
    for (int trial = 0; trial < 10; ++trial) {
      const LeftGMap m = testutil::random_left_map(rng);
      const auto cm = to_components(m);
      const auto pts = sample_admissible(m.frame, kBox, 20, 9);
      for (const auto& p : pts) {
        const auto [ly, lz] = cr_residual(cm, p, Side::Left);
        CHECK(norm(ly) <= 1e-8);
        CHECK(norm(lz) <= 1e-8);
      }
    }
  }
  SUBCASE("the mixed map violates both sides at generic points") {
    const ComponentMap cm = testutil::mixed_map();
    int right_big = 0, left_big = 0;
    const auto pts = sample_admissible(cm.frame(), kBox, 20, 11);
    for (const auto& p : pts) {
      const auto [ry, rz] = cr_residual(cm, p, Side::Right);
      const auto [ly, lz] = cr_residual(cm, p, Side::Left);
      if (std::max(norm(ry), norm(rz)) >= 1e-2) ++right_big;
      if (std::max(norm(ly), norm(lz)) >= 1e-2) ++left_big;
    }
    CHECK(right_big >= 18);
    CHECK(left_big >= 18);
  }
  SUBCASE("constant maps have zero residuals") {
    const Frame fr = testutil::mixed_map_frame();
    const ComponentMap cm{
        fr,
        {Component(BivarFn::parse("1+2*i")), Component(BivarFn::parse("3")),
         Component(BivarFn::parse("0")), Component(BivarFn::parse("i"))}};
    const auto [ry, rz] = cr_residual(cm, {0.4, 0.2, 0.6}, Side::Right);
    CHECK(norm(ry) == 0.0);
    CHECK(norm(rz) == 0.0);
  }
}

TEST_CASE("span test for hausdorff differentiability") {
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("mixed map passes with the analytic coefficients") {
    const ComponentMap cm = testutil::mixed_map();
    Rng rng(229);
    for (int k = 0; k < 10; ++k) {
      const Point3 p = rng.point_in(kBox);
      const auto t = h_monogenic_test(cm, p, 1e-9);
      REQUIRE(t.pass);
      const auto [x1, x2] = xi(fr, p);
      CHECK(std::abs(t.comps[0].lambda - std::exp(x1)) <= 1e-10);
      CHECK(std::abs(t.comps[0].mu - 2.0 * x2) <= 1e-10);
      CHECK(std::abs(t.comps[1].lambda - std::sin(x2)) <= 1e-10);
      CHECK(std::abs(t.comps[1].mu - x1 * std::cos(x2)) <= 1e-10);
      CHECK(std::abs(t.comps[2].lambda) <= 1e-10);
      CHECK(std::abs(t.comps[2].mu - 2.0 * x2) <= 1e-10);
      CHECK(std::abs(t.comps[3].lambda - std::exp(x1)) <= 1e-10);
      CHECK(std::abs(t.comps[3].mu) <= 1e-10);
    }
  }
  SUBCASE("U1 = x fails the span test") {
    const ComponentMap cm = broken_linear_map(fr);
    const auto t = h_monogenic_test(cm, {0.3, 0.2, 0.5}, 1e-6);
    CHECK(!t.pass);
    CHECK(t.max_residual > 1e-2);
  }
  SUBCASE("right-form maps pass with lambda/mu equal to the derivatives") {
    Rng rng(233);
    const RightGMap m = testutil::random_right_map(rng, 4, 0.5);
    const auto cm = to_components(m);
    const auto pts = sample_admissible(m.frame, kBox, 10, 13);
    for (const auto& p : pts) {
      const auto t = h_monogenic_test(cm, p, 1e-9);
      REQUIRE(t.pass);
      const auto [x1, x2] = xi(m.frame, p);
      CHECK(std::abs(t.comps[0].lambda - m.f1.derivative()(x1)) <= 1e-9);
      CHECK(std::abs(t.comps[0].mu) <= 1e-9);
      CHECK(std::abs(t.comps[1].mu - m.f2.derivative()(x2)) <= 1e-9);
      CHECK(std::abs(t.comps[2].lambda - m.f3.derivative()(x1)) <= 1e-9);
      CHECK(std::abs(t.comps[3].mu - m.f4.derivative()(x2)) <= 1e-9);
    }
  }
  SUBCASE("collinear span vectors are rejected") {
    const Frame collinear{{0.5, 0.5}, {0.5, 0.5}, {0, 1}, {0, 1}};
    const ComponentMap cm{collinear,
                          {Component(BivarFn::parse("xi1")), Component(),
                           Component(), Component()}};
    CHECK_THROWS_AS(h_monogenic_test(cm, {0.1, 0.2, 0.3}, 1e-9), RankDeficientFrame);
  }
}

TEST_CASE("hausdorff decomposition") {
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("mixed map yields the six significant pairs") {
    const ComponentMap cm = testutil::mixed_map();
    const Point3 p{0.35, -0.2, 0.45};
    const auto [x1, x2] = xi(fr, p);
    const auto d = hausdorff_decomposition(cm, p);

    std::vector<std::pair<Quat, Quat>> significant;
    for (const auto& pr : d.pairs) {
      if (norm(pr.first) * norm(pr.second) > 1e-9) significant.push_back(pr);
    }
    REQUIRE(significant.size() == 6);
    const Quat e1 = Quat::unit(1), e2 = Quat::unit(2), e3 = Quat::unit(3),
               e4 = Quat::unit(4);
    const std::pair<Quat, Quat> expected[6] = {
        {std::exp(x1) * e1, e1},        // exp(xi1) e1 dz e1
        {e3, 2.0 * x2 * e4},            // 2 xi2 e3 dz e4
        {e4, std::sin(x2) * e3},        // sin(xi2) e4 dz e3
        {x1 * std::cos(x2) * e2, e2},   // xi1 cos(xi2) e2 dz e2
        {2.0 * x2 * e3, e2},            // 2 xi2 e3 dz e2
        {std::exp(x1) * e4, e1},        // exp(xi1) e4 dz e1
    };
    for (int k = 0; k < 6; ++k) {
      CAPTURE(k);
      CHECK(dist(significant[k].first, expected[k].first) <= 1e-9);
      CHECK(dist(significant[k].second, expected[k].second) <= 1e-9);
    }
  }
  SUBCASE("decomposition reconstructs all directional derivatives") {
    Rng rng(239);
    for (int trial = 0; trial < 5; ++trial) {
      const RightGMap m = testutil::random_right_map(rng, 4, 0.5);
      const auto cm = to_components(m);
      const auto pts = sample_admissible(m.frame, kBox, 5, 17);
      for (const auto& p : pts) {
        const auto d = hausdorff_decomposition(cm, p);
        const auto P = cm.partials(p);
        const Point3 dirs[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        const Quat dvals[3] = {P.dx, P.dy, P.dz};
        for (int a = 0; a < 3; ++a) {
          CHECK(dist(apply_decomposition(d, m.frame, dirs[a]), dvals[a]) <= 1e-10);
        }
        CHECK(dist(decomposition_derivative(d), P.dx) <= 1e-10);
      }
    }
  }
  SUBCASE("the one-pair route of right-form maps gives the same differential") {
    Rng rng(241);
    const RightGMap m = testutil::random_right_map(rng, 4, 0.5);
    const auto cm = to_components(m);
    const Point3 p = sample_admissible(m.frame, kBox, 1, 19)[0];
    HausdorffDecomposition single;
    single.point = p;
    single.pairs = {{Quat::one(), gateaux_derivative(m, p)}};
    const auto built = hausdorff_decomposition(cm, p);
    const Point3 dirs[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& dir : dirs) {
      CHECK(dist(apply_decomposition(single, m.frame, dir),
                 apply_decomposition(built, m.frame, dir)) <= 1e-10);
    }
    CHECK(dist(decomposition_derivative(single), decomposition_derivative(built)) <=
          1e-10);
  }
  SUBCASE("zero map decomposes to an empty pair list") {
    const ComponentMap cm{fr, {Component(), Component(), Component(), Component()}};
    const auto d = hausdorff_decomposition(cm, {0.1, 0.2, 0.3});
    CHECK(d.pairs.empty());
    CHECK(norm(apply_decomposition(d, fr, {0, 1, 0})) == 0.0);
  }
  SUBCASE("span violation raises NotHMonogenic") {
    const ComponentMap cm = broken_linear_map(fr);
    CHECK_THROWS_AS(hausdorff_decomposition(cm, {0.3, 0.2, 0.5}, 1e-9), NotHMonogenic);
    CHECK_THROWS_AS(hausdorff_derivative(cm, {0.3, 0.2, 0.5}, 1e-9), NotHMonogenic);
  }
}

TEST_CASE("hausdorff derivative") {
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("mixed map: d/dx picks up both projections") {
    const ComponentMap cm = testutil::mixed_map();
    const Point3 p{0.2, 0.4, -0.3};
    const auto [x1, x2] = xi(fr, p);
    const Quat expected{std::exp(x1) + 2.0 * x2, std::sin(x2) + x1 * std::cos(x2),
                        2.0 * x2, std::exp(x1)};
    CHECK(dist(hausdorff_derivative(cm, p), expected) <= 1e-10);
  }
  SUBCASE("squaring map agrees with the gateaux derivative") {
    const RightGMap m = squaring_map(fr);
    const auto cm = to_components(m);
    const Point3 p{0.25, -0.35, 0.15};
    CHECK(dist(hausdorff_derivative(cm, p), gateaux_derivative(m, p)) <= 1e-12);
    CHECK(dist(hausdorff_derivative(cm, p), Complex{2.0} * embed(fr, p)) <= 1e-12);
  }
  SUBCASE("constant map") {
    const ComponentMap cm{fr,
                          {Component(BivarFn::parse("5")), Component(), Component(),
                           Component()}};
    CHECK(norm(hausdorff_derivative(cm, {0.7, 0.1, 0.2})) == 0.0);
  }
}

TEST_CASE("product of maps") {
  Rng rng(251);
  SUBCASE("pointwise algebra product, symbolic path") {
    const RightGMap rm = testutil::random_right_map(rng, 3, 0.6);
    const LeftGMap lm{rm.frame, testutil::random_polynomial(rng, 3, 0.6),
                      testutil::random_polynomial(rng, 3, 0.6),
                      testutil::random_polynomial(rng, 3, 0.6),
                      testutil::random_polynomial(rng, 3, 0.6)};
    const auto f = to_components(rm);
    const auto g = to_components(lm);
    const auto fg = product(f, g);
    CHECK(fg.all_analytic());
    for (int k = 0; k < 100; ++k) {
      const Point3 p = rng.point_in(kBox);
      CHECK(dist(fg.value(p), f.value(p) * g.value(p)) <=
            1e-10 * (1.0 + norm(f.value(p)) * norm(g.value(p))));
    }
  }
  SUBCASE("pointwise algebra product, raw path") {
    const Frame fr = testutil::mixed_map_frame();
    const ComponentMap f = broken_linear_map(fr);
    const ComponentMap g = testutil::mixed_map();
    const auto fg = product(f, g);
    CHECK(!fg.all_analytic());
    for (int k = 0; k < 20; ++k) {
      const Point3 p = rng.point_in(kBox);
      CHECK(dist(fg.value(p), f.value(p) * g.value(p)) <= 1e-12);
    }
  }
  SUBCASE("identity is neutral") {
    const ComponentMap one{
        testutil::mixed_map_frame(),
        {Component(BivarFn::parse("1")), Component(BivarFn::parse("1")), Component(),
         Component()}};
    const ComponentMap cm = testutil::mixed_map();
    const auto prod = product(cm, one);
    for (int k = 0; k < 10; ++k) {
      const Point3 p = rng.point_in(kBox);
      CHECK(dist(prod.value(p), cm.value(p)) <= 1e-13);
    }
  }
  SUBCASE("frame mismatch is rejected") {
    const ComponentMap a = testutil::mixed_map();
    const ComponentMap b{testutil::random_frame(rng),
                         {Component(), Component(), Component(), Component()}};
    CHECK_THROWS_AS(product(a, b), FrameMismatch);
  }
  SUBCASE("displayed product component formulas, symbolically and numerically") {
    // Right map times left map: the four components collapse onto
    // single-variable combinations in xi1/xi2 for the outer pair and mixed
    // products for e3/e4.
    const char* srcs[8] = {"z^2+1", "2*z", "z^3-z", "i*z+2", "z^2-i", "3*z+1",
                           "z^2+z", "2*z^2-1"};
    const Frame fr = testutil::mixed_map_frame();
    const RightGMap rm{fr, AnalyticFn::parse(srcs[0]), AnalyticFn::parse(srcs[1]),
                       AnalyticFn::parse(srcs[2]), AnalyticFn::parse(srcs[3])};
    const LeftGMap lm{fr, AnalyticFn::parse(srcs[4]), AnalyticFn::parse(srcs[5]),
                      AnalyticFn::parse(srcs[6]), AnalyticFn::parse(srcs[7])};
    const auto fg = product(to_components(rm), to_components(lm));

    const BivarFn F1 = BivarFn::of_xi1(rm.f1), F2 = BivarFn::of_xi2(rm.f2),
                  F3 = BivarFn::of_xi1(rm.f3), F4 = BivarFn::of_xi2(rm.f4);
    const BivarFn G1 = BivarFn::of_xi1(lm.f1), G2 = BivarFn::of_xi2(lm.f2),
                  G3 = BivarFn::of_xi2(lm.f3), G4 = BivarFn::of_xi1(lm.f4);
    const BivarFn expected[4] = {F1 * G1 + F3 * G4, F2 * G2 + F4 * G3,
                                 F1 * G3 + F3 * G2, F2 * G4 + F4 * G1};
    for (int k = 0; k < 4; ++k) {
      CAPTURE(k);
      REQUIRE(fg.component(k).bivar() != nullptr);
      CHECK(fg.component(k).bivar()->str() == expected[k].str());
    }
    for (int k = 0; k < 50; ++k) {
      const Point3 p = rng.point_in(kBox);
      const auto [x1, x2] = xi(fr, p);
      const Quat direct{expected[0](x1, x2), expected[1](x1, x2), expected[2](x1, x2),
                        expected[3](x1, x2)};
      CHECK(dist(fg.value(p), direct) <= 1e-10);
    }
  }
  SUBCASE("differential product rule in all three directions") {
    const RightGMap rm = testutil::random_right_map(rng, 3, 0.5);
    const LeftGMap lm{rm.frame, testutil::random_polynomial(rng, 3, 0.5),
                      testutil::random_polynomial(rng, 3, 0.5),
                      testutil::random_polynomial(rng, 3, 0.5),
                      testutil::random_polynomial(rng, 3, 0.5)};
    const auto f = to_components(rm);
    const auto g = to_components(lm);
    const auto fg = product(f, g);
    const auto pts = sample_admissible(rm.frame, kBox, 10, 23);
    for (const auto& p : pts) {
      const auto Pf = f.partials(p), Pg = g.partials(p), Pfg = fg.partials(p);
      const Quat fv = f.value(p), gv = g.value(p);
      CHECK(dist(Pfg.dx, Pf.dx * gv + fv * Pg.dx) <= 1e-8);
      CHECK(dist(Pfg.dy, Pf.dy * gv + fv * Pg.dy) <= 1e-8);
      CHECK(dist(Pfg.dz, Pf.dz * gv + fv * Pg.dz) <= 1e-8);
    }
  }
}

TEST_CASE("taylor expansion") {
  const Frame fr = testutil::mixed_map_frame();
  SUBCASE("squaring map about the origin") {
    const RightGMap m = squaring_map(fr);
    const auto c = taylor_expand(m, {0, 0, 0}, 4);
    REQUIRE(c.size() == 5);
    CHECK(norm(c[0]) == 0.0);
    CHECK(norm(c[1]) == 0.0);
    CHECK(dist(c[2], Quat::one()) == 0.0);
    CHECK(norm(c[3]) == 0.0);
    CHECK(norm(c[4]) == 0.0);
    const Point3 p{0.3, 0.2, -0.4};
    const Quat z = embed(fr, p);
    CHECK(dist(eval_taylor(c, fr, {0, 0, 0}, p, Side::Right), z * z) <= 1e-13);
  }
  SUBCASE("polynomial maps reconstruct exactly at N = degree") {
    Rng rng(257);
    for (int trial = 0; trial < 10; ++trial) {
      const RightGMap m = testutil::random_right_map(rng, 5, 0.5);
      const Point3 p0{0.1, -0.2, 0.3};
      const auto c = taylor_expand(m, p0, 5);
      for (int k = 0; k < 10; ++k) {
        const Point3 p = rng.point_in(kBox);
        const Quat direct = value(m, p);
        CHECK(dist(eval_taylor(c, m.frame, p0, p, Side::Right), direct) <=
              1e-12 * (1.0 + norm(direct)));
      }
    }
  }
  SUBCASE("left series places coefficients on the left") {
    Rng rng(263);
    const LeftGMap m = testutil::random_left_map(rng, 5, 0.5);
    const Point3 p0{-0.15, 0.2, 0.1};
    const auto c = taylor_expand(m, p0, 5);
    for (int k = 0; k < 10; ++k) {
      const Point3 p = rng.point_in(kBox);
      const Quat direct = value(m, p);
      CHECK(dist(eval_taylor(c, m.frame, p0, p, Side::Left), direct) <=
            1e-12 * (1.0 + norm(direct)));
    }
  }
  SUBCASE("exponential map partial sums decay geometrically") {
    const RightGMap m{fr, AnalyticFn::exponential(), AnalyticFn::exponential(),
                      AnalyticFn::exponential(), AnalyticFn::exponential()};
    const Point3 p0{0.2, -0.1, 0.15};
    // Probe within a quarter of the distance to the box boundary.
    const Point3 p = p0 + 0.2 * Point3{0.5, 0.5, -0.5};
    const int order = 12;
    const auto c = taylor_expand(m, p0, order);
    const Quat direct = value(m, p);
    std::vector<double> err;
    for (int n = 0; n <= order; ++n) {
      err.push_back(
          dist(eval_taylor(std::span(c.data(), static_cast<size_t>(n) + 1), fr, p0, p,
                           Side::Right),
               direct));
    }
    for (size_t n = 2; n + 1 < err.size(); ++n) {
      if (err[n] < 1e-13) break;
      CHECK(err[n + 1] <= 0.5 * err[n]);
    }
  }
}

TEST_CASE("classification") {
  SUBCASE("mixed map: H yes, both G sides no") {
    const ComponentMap cm = testutil::mixed_map();
    const auto rep = classify(cm, kBox, 100, 1e-9, 1);
    CHECK(rep.h);
    CHECK(!rep.right_g);
    CHECK(!rep.left_g);
    CHECK(!rep.right_h);
    CHECK(!rep.left_h);
    CHECK(rep.h_residual <= 1e-9);
    CHECK(rep.right_cr_residual >= 1e-2);
    CHECK(rep.left_cr_residual >= 1e-2);
    CHECK(rep.points_tested == 100);
  }
  SUBCASE("right-form maps classify right_G, hence right_H and H") {
    Rng rng(269);
    for (int trial = 0; trial < 5; ++trial) {
      const RightGMap m = testutil::random_right_map(rng, 4, 0.5);
      const auto rep = classify(to_components(m), kBox, 60, 1e-9, trial + 1);
      CHECK(rep.right_g);
      CHECK(rep.right_h);
      CHECK(rep.h);
    }
  }
  SUBCASE("U1 = x map fails everything") {
    const auto rep =
        classify(broken_linear_map(testutil::mixed_map_frame()), kBox, 60, 1e-6, 3);
    CHECK(!rep.right_g);
    CHECK(!rep.left_g);
    CHECK(!rep.h);
    CHECK(!rep.right_h);
    CHECK(!rep.left_h);
  }
  SUBCASE("identity map is monogenic on both sides") {
    const auto rep = classify(to_components(identity_map(testutil::mixed_map_frame())),
                              kBox, 60, 1e-9, 5);
    CHECK(rep.right_g);
    CHECK(rep.left_g);
    CHECK(rep.right_h);
    CHECK(rep.left_h);
    CHECK(rep.h);
  }
  SUBCASE("parallel evaluation is deterministic") {
    const ComponentMap cm = testutil::mixed_map();
    const auto a = classify(cm, kBox, 400, 1e-9, 2);
    const auto b = classify(cm, kBox, 400, 1e-9, 2);
    CHECK(a.right_cr_residual == b.right_cr_residual);
    CHECK(a.left_cr_residual == b.left_cr_residual);
    CHECK(a.h_residual == b.h_residual);
    CHECK(a.right_h_residual == b.right_h_residual);
    CHECK(a.left_h_residual == b.left_h_residual);
  }
}

TEST_CASE("derivative equality for right-form maps") {
  // Hausdorff and Gateaux derivatives agree for 50 random maps.
  Rng rng(271);
  for (int trial = 0; trial < 50; ++trial) {
    const RightGMap m = testutil::random_right_map(rng, 5, 0.5);
    const auto cm = to_components(m);
    const Point3 p = sample_admissible(m.frame, kBox, 1, 100 + trial)[0];
    CHECK(dist(hausdorff_derivative(cm, p), gateaux_derivative(m, p)) <= 1e-9);
  }
}

TEST_CASE("fiber constancy of the projected values") {
  // For a right-form map, f1 of the value depends only on xi1: moving along
  // the first degeneracy direction leaves it unchanged while xi2 moves.
  Rng rng(277);
  for (int trial = 0; trial < 5; ++trial) {
    const RightGMap m = testutil::random_right_map(rng, 4, 0.5);
    const auto [l1, l2] = degeneracy_lines(m.frame);
    const Point3 base = sample_admissible(m.frame, kBox, 1, 200 + trial)[0];
    const Complex v0 = f1(value(m, base));
    bool xi2_moved = false;
    for (double t : {0.1, -0.2, 0.3}) {
      const Point3 q =
          base + t * Point3{l1.direction[0], l1.direction[1], l1.direction[2]};
      CHECK(std::abs(f1(value(m, q)) - v0) <= 1e-9);
      if (std::abs(xi(m.frame, q).second - xi(m.frame, base).second) > 1e-3) {
        xi2_moved = true;
      }
    }
    CHECK(xi2_moved);
    // Mirror: f2 along the second direction.
    const Complex w0 = f2(value(m, base));
    for (double t : {0.15, -0.25}) {
      const Point3 q =
          base + t * Point3{l2.direction[0], l2.direction[1], l2.direction[2]};
      CHECK(std::abs(f2(value(m, q)) - w0) <= 1e-9);
    }
  }
}

TEST_CASE("representability fits") {
  Rng rng(281);
  SUBCASE("right-form polynomial maps fit on the right pattern") {
    for (int trial = 0; trial < 3; ++trial) {
      const RightGMap m = testutil::random_right_map(rng, 5, 0.5);
      const auto cm = to_components(m);
      const auto fit = fit_representation(cm, kBox, Side::Right);
      CHECK(fit.representable);
      CHECK(fit.max_residual <= 1e-7);
      const auto wrong = fit_representation(cm, kBox, Side::Left);
      CHECK(!wrong.representable);
    }
  }
  SUBCASE("left-form maps fit on the left pattern only") {
    const LeftGMap m = testutil::random_left_map(rng, 5, 0.5);
    const auto cm = to_components(m);
    CHECK(fit_representation(cm, kBox, Side::Left).representable);
    CHECK(!fit_representation(cm, kBox, Side::Right).representable);
  }
  SUBCASE("the mixed map fits neither pattern") {
    const ComponentMap cm = testutil::mixed_map();
    CHECK(!fit_representation(cm, kBox, Side::Right).representable);
    CHECK(!fit_representation(cm, kBox, Side::Left).representable);
  }
}
