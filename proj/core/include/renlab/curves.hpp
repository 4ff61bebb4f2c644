#ifndef RENLAB_CURVES_HPP_
#define RENLAB_CURVES_HPP_

#include <vector>

#include "renlab/models.hpp"

namespace renlab {

// Real trigonometric polynomial c0 + sum a_m cos(2 pi m t/T) + b_m sin(...).
struct FourierSeries {
  double period = 2.0 * kPi;
  double c0 = 0.0;
  std::vector<double> a, b;

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

  static FourierSeries constant(double v, double period) {
    FourierSeries f;
    f.period = period;
    f.c0 = v;
    return f;
  }
  // v + delta cos(2 pi m t / period)
  static FourierSeries perturbed(double v, double delta, int m, double period);
};

// Closed curve s = s0(theta) on the conformal boundary, with the
// normal-exponential (tube) chart around it.  orientation +1 points the
// curve normal toward increasing s (north on the sphere).
class BoundaryCurve {
 public:
  enum class Geometry { FlatTorus, Sphere };

  BoundaryCurve(Geometry geom, double theta_period, FourierSeries s0,
                int orientation = +1);

  Geometry geometry() const { return geom_; }
  double theta_period() const { return theta_period_; }
  int orientation() const { return orientation_; }
  const FourierSeries& s0() const { return s0_; }

  // Tube chart (ttheta, ts) -> canonical boundary coordinates.
  void tube_point(double ttheta, double ts, double* theta_b, double* s_b) const;
  // Inverse of the tube chart near the curve; false if Newton fails.
  bool tube_invert(double theta_b, double s_b, double* ttheta, double* ts) const;
  // h-length element of the dtheta~ direction at (ttheta, ts).
  double ell(double ttheta, double ts) const;
  // Geodesic curvature d/ds log ell at ts = 0, by finite differences of the
  // normal-exponential construction.
  double kappa(double ttheta) const;
  // L(Gamma, h)
  double length() const;

  // whether the curve is a constant-s circle
  bool is_constant() const { return s0_.a.empty() && s0_.b.empty(); }

 private:
  void frame(double ttheta, Vec3* c, Vec3* T, Vec3* n, Vec3* dc, Vec3* dT,
             Vec3* dn) const;  // sphere embedding frame and derivatives

  Geometry geom_;
  double theta_period_;
  FourierSeries s0_;
  int orientation_;
};

// kappa sampled along the curve; the spec-level geodesic_curvature operation.
std::vector<double> geodesic_curvature(const BoundaryCurve& curve, int n_samples);

}  // namespace renlab

#endif  // RENLAB_CURVES_HPP_
