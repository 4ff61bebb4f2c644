#include <cmath>

#include "doctest.h"
#include "renlab/curves.hpp"

using namespace renlab;

namespace {
// Independent oracle: h-lengths of pushed-off curves by direct quadrature of
// the sphere tube map, differentiated in the offset.
double kappa_by_length_variation(const BoundaryCurve& c, double d) {
  auto len_at = [&](double ts) {
    const int n = 2048;
    double L = 0.0;
    for (int i = 0; i < n; ++i) L += c.ell(c.theta_period() * i / n, ts);
    return L * c.theta_period() / n;
  };
  return (std::log(len_at(d)) - std::log(len_at(-d))) / (2.0 * d);
}
}  // namespace

TEST_SUITE("curves") {

TEST_CASE("constant-s circle on the flat torus has kappa = 0") {
  BoundaryCurve c(BoundaryCurve::Geometry::FlatTorus, 4.0 * kPi / 3.0,
                  FourierSeries::constant(0.3, 4.0 * kPi / 3.0));
  for (double t : {0.0, 0.9, 2.2}) CHECK(std::abs(c.kappa(t)) < 1e-12);
  CHECK(c.length() == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("great circle (equator) has kappa = 0") {
  BoundaryCurve c(BoundaryCurve::Geometry::Sphere, 2.0 * kPi,
                  FourierSeries::constant(0.0, 2.0 * kPi));
  for (double t : {0.0, 1.1, 3.9}) CHECK(std::abs(c.kappa(t)) < 1e-10);
  CHECK(c.length() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("latitude circle at polar angle alpha: kappa = cot(alpha) away from the cap") {
  // polar angle alpha = pi/2 - latitude; normal pointing away from the north
  // cap is orientation -1 (southward)
  for (double alpha : {kPi / 4.0, kPi / 3.0}) {
    double lat = 0.5 * kPi - alpha;
    BoundaryCurve c(BoundaryCurve::Geometry::Sphere, 2.0 * kPi,
                    FourierSeries::constant(lat, 2.0 * kPi), -1);
    for (double t : {0.3, 1.7}) {
      CHECK(c.kappa(t) == doctest::Approx(1.0 / std::tan(alpha)).epsilon(1e-8));
    }
    // classical value vs the normal-exponential FD oracle
    CHECK(kappa_by_length_variation(c, 1e-4) ==
          doctest::Approx(1.0 / std::tan(alpha)).epsilon(1e-6));
    CHECK(c.length() == doctest::Approx(2.0 * kPi * std::sin(alpha)).epsilon(1e-12));
  }
}

TEST_CASE("northward orientation flips the latitude-circle kappa sign") {
  double alpha = kPi / 3.0;
  BoundaryCurve c(BoundaryCurve::Geometry::Sphere, 2.0 * kPi,
                  FourierSeries::constant(0.5 * kPi - alpha, 2.0 * kPi), +1);
  CHECK(c.kappa(0.7) == doctest::Approx(-1.0 / std::tan(alpha)).epsilon(1e-8));
}

TEST_CASE("perturbed flat-torus curve: kappa matches -s0''/g^3") {
  const double delta = 0.02;
  BoundaryCurve c(BoundaryCurve::Geometry::FlatTorus, 2.0 * kPi,
                  FourierSeries::perturbed(0.25, delta, 2, 2.0 * kPi));
  for (double t : {0.0, 0.5, 2.0}) {
    double ds = c.s0().deriv(t), d2s = c.s0().deriv2(t);
    double g = std::sqrt(1.0 + ds * ds);
    CHECK(c.kappa(t) == doctest::Approx(-d2s / (g * g * g)).epsilon(1e-7));
  }
}

TEST_CASE("tube chart round-trips and has unit normal speed") {
  BoundaryCurve c(BoundaryCurve::Geometry::Sphere, 2.0 * kPi,
                  FourierSeries::perturbed(0.4, 0.05, 2, 2.0 * kPi));
  for (double t : {0.2, 1.3, 4.0}) {
    for (double ts : {-0.1, 0.05, 0.18}) {
      double tb, sb, t2, ts2;
      c.tube_point(t, ts, &tb, &sb);
      REQUIRE(c.tube_invert(tb, sb, &t2, &ts2));
      CHECK(std::abs(std::remainder(t2 - t, 2.0 * kPi)) < 1e-9);
      CHECK(ts2 == doctest::Approx(ts).epsilon(1e-9));
    }
  }
  // normal-geodesic speed: sphere distance between offsets equals the offset
  double tb0, sb0, tb1, sb1;
  c.tube_point(1.0, 0.0, &tb0, &sb0);
  c.tube_point(1.0, 0.01, &tb1, &sb1);
  Vec3 p0(std::cos(sb0) * std::cos(tb0), std::cos(sb0) * std::sin(tb0), std::sin(sb0));
  Vec3 p1(std::cos(sb1) * std::cos(tb1), std::cos(sb1) * std::sin(tb1), std::sin(sb1));
  CHECK(std::acos(p0.dot(p1)) == doctest::Approx(0.01).epsilon(1e-10));
}

TEST_CASE("geodesic_curvature sampling matches pointwise kappa") {
  BoundaryCurve c(BoundaryCurve::Geometry::FlatTorus, 2.0 * kPi,
                  FourierSeries::perturbed(0.0, 0.05, 2, 2.0 * kPi));
  auto ks = geodesic_curvature(c, 8);
  for (int i = 0; i < 8; ++i)
    CHECK(ks[i] == doctest::Approx(c.kappa(2.0 * kPi * i / 8.0)).epsilon(1e-14));
}

}  // TEST_SUITE
