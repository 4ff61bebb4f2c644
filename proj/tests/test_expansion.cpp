#include <cmath>

#include "doctest.h"
#include "renlab/expansion.hpp"

using namespace renlab;

TEST_SUITE("expansion") {

TEST_CASE("ladder fit recovers polynomial coefficients exactly") {
  Ladder lad;
  auto xs = lad.values();
  std::vector<double> ys(xs.size());
  for (size_t k = 0; k < xs.size(); ++k)
    ys[k] = 2.0 - 0.5 * xs[k] * xs[k] + 0.125 * std::pow(xs[k], 3);
  LadderFit fit = fit_ladder(xs, ys, {0, 1, 2, 3});
  CHECK(fit.coeff[0] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(fit.coeff[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(fit.coeff[2] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(fit.coeff[3] == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(fit.converged(1e-9));
}

TEST_CASE("potential expansion: hyperbolic3 gives (0, 1, 0, -1/4, 0)") {
  auto m = hyperbolic3();
  PotentialExpansion pe = potential_expansion(*m, 4);
  const double expect[5] = {0.0, 1.0, 0.0, -0.25, 0.0};
  for (int p = 0; p <= 4; ++p) {
    CHECK(std::abs(pe.measured.coeff(p).c[0](0, 0) - expect[p]) < 1e-8);
    CHECK(std::abs(pe.predicted.coeff(p).c[0](0, 0) - expect[p]) < 1e-14);
  }
}

TEST_CASE("potential expansion: horowitz_myers gives (0, 1, 0, 0, -1/6)") {
  auto m = horowitz_myers();
  PotentialExpansion pe = potential_expansion(*m, 4);
  const double expect[5] = {0.0, 1.0, 0.0, 0.0, -1.0 / 6.0};
  for (int p = 0; p <= 4; ++p)
    CHECK(std::abs(pe.measured.coeff(p).c[0](0, 0) - expect[p]) < 1e-8);
  // x^2 coefficient vanishes for every static model
  CHECK(std::abs(pe.measured.coeff(2).max_norm()) < 1e-8);
  // measured matches the closed-form prediction (R_h = 0, tr h3 = -1/3)
  for (int p = 0; p <= 4; ++p)
    CHECK(std::abs(pe.measured.coeff(p).c[0](0, 0) -
                   pe.predicted.coeff(p).c[0](0, 0)) < 1e-8);
}

TEST_CASE("conformal metric expansion: orders 0..3 on both models") {
  for (auto mp : {std::static_pointer_cast<MetricModel>(hyperbolic3()),
                  std::static_pointer_cast<MetricModel>(horowitz_myers())}) {
    ConformalExpansion ce = conformal_metric_expansion(*mp, 3);
    for (int p = 0; p <= 3; ++p) CHECK(ce.discrepancy[p] < 1e-8);
  }
}

TEST_CASE("conformal expansion order-3 tangential block of HM is -dtheta^2") {
  auto m = horowitz_myers();
  ConformalExpansion ce = conformal_metric_expansion(*m, 3);
  CHECK(ce.measured_tan.coeff(3).c[0](0, 0) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(std::abs(ce.measured_tan.coeff(3).c[2](0, 0)) < 1e-8);
}

TEST_CASE("conformal expansion order-2 tangential block of hyperbolic3 is -h") {
  auto m = hyperbolic3();
  ConformalExpansion ce = conformal_metric_expansion(*m, 3);
  // -(R_h/2) h with R_h = 2
  Field dev = ce.measured_tan.coeff(2) + ce.measured_tan.coeff(0);
  CHECK(dev.max_norm() < 1e-8);
  // order 0 is dx^2 + h, order 1 vanishes
  CHECK(ce.measured_xx.coeff(0).c[0](0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ce.measured_tan.coeff(1).max_norm() < 1e-8);
  CHECK(ce.measured_xx.coeff(1).max_norm() < 1e-8);
}

TEST_CASE("extract_neumann: HM gives diag(-2/3, 1/3) within 1e-6") {
  auto m = horowitz_myers();
  NeumannExtraction ne = extract_neumann(*m);
  CHECK(ne.h3.c[0](0, 0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-6));
  CHECK(ne.h3.c[2](0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(std::abs(ne.h3.c[1](0, 0)) < 1e-8);
}

TEST_CASE("extract_neumann: hyperbolic3 gives 0 within 1e-6") {
  auto m = hyperbolic3();
  NeumannExtraction ne = extract_neumann(*m);
  CHECK(ne.h3.max_norm() < 1e-6);
}

TEST_CASE("extract_neumann round-trips a prescribed model") {
  Mat2 t;
  t << 0.37, -0.05, -0.05, -0.12;
  auto wt = warped_torus([](double, double) { return 1.0; },
                         [t](double, double) { return t; }, 2.0 * kPi, 1.0);
  NeumannExtraction ne = extract_neumann(*wt);
  CHECK(ne.h3.c[0](0, 0) == doctest::Approx(0.37).epsilon(1e-8));
  CHECK(ne.h3.c[1](0, 0) == doctest::Approx(-0.05).epsilon(1e-8));
  CHECK(ne.h3.c[2](0, 0) == doctest::Approx(-0.12).epsilon(1e-8));
}

TEST_CASE("levelset H series: hyperbolic3 -> (-2, 0, -1, 0)") {
  auto m = hyperbolic3();
  LevelsetHSeries hs = levelset_H_series(*m);
  CHECK(hs.measured[0] == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(hs.measured[1]) < 1e-4);
  CHECK(hs.measured[2] == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(std::abs(hs.measured[3]) < 1e-3);
}

TEST_CASE("levelset H series: horowitz_myers -> (-2, 0, 0, -1/2)") {
  auto m = horowitz_myers();
  LevelsetHSeries hs = levelset_H_series(*m);
  CHECK(hs.measured[0] == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(hs.measured[1]) < 1e-4);
  CHECK(std::abs(hs.measured[2]) < 1e-4);
  CHECK(hs.measured[3] == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("richardson table contracts once in the asymptotic regime") {
  auto m = horowitz_myers();
  auto xs = Ladder{}.values();
  std::vector<double> ys(xs.size());
  for (size_t k = 0; k < xs.size(); ++k)
    ys[k] = 1.0 / m->V(ChartPoint{xs[k], 0.0, 0.0});
  LadderFit fit = fit_ladder(xs, ys, {0, 1, 2, 3, 4});
  CHECK(fit.converged(1e-8));
  // a deliberately broken sample set must trip the failure path
  ys[3] += 0.1;
  LadderFit bad = fit_ladder(xs, ys, {0, 1, 2, 3, 4});
  CHECK_FALSE(bad.converged(1e-8));
}

}  // TEST_SUITE
