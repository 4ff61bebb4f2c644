#include <cmath>
#include <random>

#include "doctest.h"
#include "renlab/geometry.hpp"
#include "renlab/models.hpp"

using namespace renlab;

namespace {

// Independent coordinate-transform oracle for Horowitz-Myers: evaluate the
// native (r, theta, s) metric and pull it back through r(x) by hand.
Mat3 hm_fg_via_native(double x) {
  const double x3 = x * x * x;
  const double r = std::pow(1.0 + 0.25 * x3, 2.0 / 3.0) / x;
  const double drdx = -(1.0 - 0.25 * x3) * std::pow(1.0 + 0.25 * x3, -1.0 / 3.0) / (x * x);
  Mat3 native = HorowitzMyersModel::native_metric(r);
  Mat3 g = Mat3::Zero();
  g(0, 0) = native(0, 0) * drdx * drdx;
  g(1, 1) = native(1, 1);
  g(2, 2) = native(2, 2);
  return g;
}

// Ball-model pullback oracle for hyperbolic space.
Mat3 hyp_fg_via_ball(const Hyperbolic3Model& m, const ChartPoint& p) {
  Vec3 b = m.to_ball(p);
  Mat3 ball = Hyperbolic3Model::ball_metric(b[0], b[1]);
  const double x = p.x;
  const double drho_dx = -4.0 / ((2.0 + x) * (2.0 + x));
  // (x,theta,s) -> (rho,phi,az): rho = rho(x), phi = pi/2 - s, az = theta
  Mat3 g = Mat3::Zero();
  g(0, 0) = ball(0, 0) * drho_dx * drho_dx;
  g(1, 1) = ball(2, 2);  // d theta = d az
  g(2, 2) = ball(1, 1);  // d s = -d phi, squared
  return g;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("hyperbolic3 compactified metric at the boundary is dx^2 + round sphere") {
  auto m = hyperbolic3();
  MetricTensor g = metric_eval(*m, ChartPoint{0.0, 0.3, 0.2}, Which::Compactified);
  CHECK(g.components(0, 0) == doctest::Approx(1.0));
  CHECK(g.components(2, 2) == doctest::Approx(1.0));
  CHECK(g.components(1, 1) == doctest::Approx(std::cos(0.2) * std::cos(0.2)));
  CHECK(std::abs(g.components(0, 1)) < 1e-15);
}

TEST_CASE("physical metric at x = 0 raises singular evaluation") {
  auto m = hyperbolic3();
  CHECK_THROWS_AS(metric_eval(*m, ChartPoint{0.0, 0.0, 0.0}, Which::Physical),
                  SingularEvaluation);
}

TEST_CASE("horowitz_myers compactified components match the native-chart oracle") {
  auto m = horowitz_myers();
  for (double x : {0.1, 0.35, 0.8, 1.2}) {
    ChartPoint p{x, 0.4, 0.1};
    double v = m->V(p);
    Mat3 gbar = m->fg_metric(p) / (v * v);
    Mat3 oracle = hm_fg_via_native(x) / (v * v);
    CHECK((gbar - oracle).cwiseAbs().maxCoeff() < 1e-10 * oracle.norm());
  }
}

TEST_CASE("built-in models: FG chart and native chart agree at random interior points") {
  std::mt19937 rng(20250810);
  std::uniform_real_distribution<double> ux(0.05, 1.2), uang(0.0, 1.0);

  auto hm = horowitz_myers();
  auto hyp = hyperbolic3();
  for (int trial = 0; trial < 100; ++trial) {
    double x = ux(rng);
    ChartPoint p{x, uang(rng), uang(rng) - 0.5};
    Mat3 a = hm->fg_metric(p);
    Mat3 b = hm_fg_via_native(x);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * b.cwiseAbs().maxCoeff());

    double xh = 1.9 * uang(rng) + 0.05;
    ChartPoint ph{xh, uang(rng), uang(rng) - 0.5};
    Mat3 ah = hyp->fg_metric(ph);
    Mat3 bh = hyp_fg_via_ball(*hyp, ph);
    CHECK((ah - bh).cwiseAbs().maxCoeff() <= 1e-10 * bh.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("physical equals V^2 times compactified to 1e-12 relative") {
  auto hm = horowitz_myers();
  auto hyp = hyperbolic3();
  for (double x : {0.02, 0.3, 1.0}) {
    for (const MetricModel* m : {static_cast<const MetricModel*>(hm.get()),
                                 static_cast<const MetricModel*>(hyp.get())}) {
      ChartPoint p{x, 0.7, 0.23};
      Mat3 phys = metric_eval(*m, p, Which::Physical).components;
      Mat3 comp = metric_eval(*m, p, Which::Compactified).components;
      double v = m->V(p);
      CHECK((phys - v * v * comp).cwiseAbs().maxCoeff() <=
            1e-12 * phys.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("boundary data: hyperbolic3") {
  auto m = hyperbolic3();
  BoundaryData bd = boundary_data(*m);
  CHECK(bd.h3.max_norm() == doctest::Approx(0.0));
  CHECK(bd.mu.max_norm() == doctest::Approx(0.0));
  CHECK(bd.mass == doctest::Approx(0.0));
  CHECK(bd.R_h.c[0](0, 0) == doctest::Approx(2.0));
}

TEST_CASE("boundary data: horowitz_myers from the binomial oracle") {
  // Oracle: g_thth bracket = (1-u)^2 (1+u)^{-2/3}, g_ss bracket = (1+u)^{4/3},
  // u = x^3/4.  Third-order coefficients by direct binomial expansion.
  auto binom = [](double q, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c *= (q - i) / (i + 1);
    return c;
  };
  // (1+u)^{4/3} = 1 + (4/3)u + ...  ->  x^3 coefficient 1/3
  double h3_ss = binom(4.0 / 3.0, 1) * 0.25;
  // (1-u)^2(1+u)^{-2/3} = 1 + (-2 - 2/3)u + ... -> x^3 coefficient -2/3
  double h3_tt = (-2.0 + binom(-2.0 / 3.0, 1)) * 0.25;
  CHECK(h3_ss == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(h3_tt == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));

  auto m = horowitz_myers();
  BoundaryData bd = boundary_data(*m);
  CHECK(bd.h3.c[0](0, 0) == doctest::Approx(h3_tt).epsilon(1e-14));
  CHECK(bd.h3.c[2](0, 0) == doctest::Approx(h3_ss).epsilon(1e-14));
  CHECK(bd.h3.c[1](0, 0) == doctest::Approx(0.0));

  // tr_h h3 = -1/3, mu = -1, mass = -Area(Sigma)
  CHECK(bd.tr_h3_max_dev(-1.0 / 3.0) < 1e-14);
  CHECK(bd.mu.c[0](0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  double area = m->theta_period() * m->s_period();
  CHECK(bd.mass == doctest::Approx(-area).epsilon(1e-12));

  // h3 + (tr h3) h = -dtheta^2
  Mat2 t3 = m->h3(0.0, 0.0);
  Mat2 corr = t3 + (-1.0 / 3.0) * Mat2::Identity();
  CHECK(corr(0, 0) == doctest::Approx(-1.0));
  CHECK(corr(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("horowitz_myers 1/V expansion has vanishing x^3 and -1/6 at x^4") {
  // 1/V = x (1 + x^3/4)^{-2/3}: binomial gives x - (1/6) x^4 + O(x^7)
  auto m = horowitz_myers();
  for (double x : {0.1, 0.05}) {
    double invV = 1.0 / m->V(ChartPoint{x, 0.0, 0.0});
    double oracle = x * std::pow(1.0 + 0.25 * x * x * x, -2.0 / 3.0);
    CHECK(invV == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(invV - x == doctest::Approx(-x * x * x * x / 6.0).epsilon(2e-3));
  }
}

TEST_CASE("gbar_xx = 1 + (tr h3) x^3 + O(x^4) for both models") {
  auto hm = horowitz_myers();
  auto hyp = hyperbolic3();
  const double x = 0.02;
  {
    double v = hm->V(ChartPoint{x, 0.0, 0.0});
    double gxx = hm->fg_metric(ChartPoint{x, 0.0, 0.0})(0, 0) / (v * v);
    CHECK(gxx - 1.0 == doctest::Approx((-1.0 / 3.0) * x * x * x).epsilon(1e-4));
  }
  {
    double v = hyp->V(ChartPoint{x, 0.0, 0.0});
    double gxx = hyp->fg_metric(ChartPoint{x, 0.0, 0.0})(0, 0) / (v * v);
    // tr h3 = 0 here; remaining deviation is the -R_h/4 x^2 term
    CHECK(gxx - 1.0 == doctest::Approx(-0.5 * x * x).epsilon(1e-3));
  }
}

TEST_CASE("warped torus carries prescribed Neumann data and flat h") {
  auto wt = warped_torus(
      [](double th, double) { return 1.0 + 0.2 * std::cos(th); },
      [](double, double) {
        Mat2 t;
        t << -0.4, 0.0, 0.0, 0.1;
        return t;
      },
      2.0 * kPi, 1.0);
  BoundaryData bd = boundary_data(*wt);
  CHECK(bd.R_h.max_norm() == doctest::Approx(0.0));
  CHECK(bd.h3.c[0](0, 0) == doctest::Approx(-0.4));
  Mat2 hb = wt->h(0.5, 0.0);
  CHECK(hb(0, 0) == doctest::Approx(std::pow(1.0 + 0.2 * std::cos(0.5), 2)));
}

}  // TEST_SUITE
