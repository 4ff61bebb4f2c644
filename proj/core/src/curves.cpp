#include "renlab/curves.hpp"

#include <cmath>

namespace renlab {

double FourierSeries::eval(double t) const {
  double w = 2.0 * kPi / period, v = c0;
  for (size_t m = 0; m < a.size(); ++m) v += a[m] * std::cos(w * (m + 1) * t);
  for (size_t m = 0; m < b.size(); ++m) v += b[m] * std::sin(w * (m + 1) * t);
  return v;
}

double FourierSeries::deriv(double t) const {
  double w = 2.0 * kPi / period, v = 0.0;
  for (size_t m = 0; m < a.size(); ++m)
    v -= a[m] * w * (m + 1) * std::sin(w * (m + 1) * t);
  for (size_t m = 0; m < b.size(); ++m)
    v += b[m] * w * (m + 1) * std::cos(w * (m + 1) * t);
  return v;
}

double FourierSeries::deriv2(double t) const {
  double w = 2.0 * kPi / period, v = 0.0;
  for (size_t m = 0; m < a.size(); ++m) {
    double wm = w * (m + 1);
    v -= a[m] * wm * wm * std::cos(wm * t);
  }
  for (size_t m = 0; m < b.size(); ++m) {
    double wm = w * (m + 1);
    v -= b[m] * wm * wm * std::sin(wm * t);
  }
  return v;
}

FourierSeries FourierSeries::perturbed(double v, double delta, int m, double period) {
  FourierSeries f;
  f.period = period;
  f.c0 = v;
  f.a.assign(m, 0.0);
  f.a[m - 1] = delta;
  return f;
}

BoundaryCurve::BoundaryCurve(Geometry geom, double theta_period, FourierSeries s0,
                             int orientation)
    : geom_(geom), theta_period_(theta_period), s0_(std::move(s0)),
      orientation_(orientation) {}

void BoundaryCurve::frame(double t, Vec3* c, Vec3* T, Vec3* n, Vec3* dc, Vec3* dT,
                          Vec3* dn) const {
  // unit-sphere embedding; s is latitude
  const double s = s0_.eval(t), ds = s0_.deriv(t), d2s = s0_.deriv2(t);
  const double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t), st = std::sin(t);
  *c = Vec3(cs * ct, cs * st, ss);
  Vec3 c1(-ds * ss * ct - cs * st, -ds * ss * st + cs * ct, ds * cs);
  Vec3 c2(-d2s * ss * ct - ds * ds * cs * ct + 2.0 * ds * ss * st - cs * ct,
          -d2s * ss * st - ds * ds * cs * st - 2.0 * ds * ss * ct - cs * st,
          d2s * cs - ds * ds * ss);
  const double g = c1.norm();
  *T = c1 / g;
  Vec3 dg_dir = c2 / g - c1 * (c1.dot(c2)) / (g * g * g);
  *n = orientation_ * c->cross(*T);
  *dc = c1;
  *dT = dg_dir;
  *dn = orientation_ * (c1.cross(*T) + c->cross(dg_dir));
}

void BoundaryCurve::tube_point(double t, double ts, double* theta_b, double* s_b) const {
  if (geom_ == Geometry::FlatTorus) {
    const double ds = s0_.deriv(t), g = std::sqrt(1.0 + ds * ds);
    *theta_b = t - orientation_ * ts * ds / g;
    *s_b = s0_.eval(t) + orientation_ * ts / g;
    return;
  }
  Vec3 c, T, n, dc, dT, dn;
  frame(t, &c, &T, &n, &dc, &dT, &dn);
  Vec3 P = std::cos(ts) * c + std::sin(ts) * n;
  *s_b = std::asin(std::clamp(P[2], -1.0, 1.0));
  *theta_b = std::atan2(P[1], P[0]);
}

double BoundaryCurve::ell(double t, double ts) const {
  if (geom_ == Geometry::FlatTorus) {
    // dP/dt = (1 - ts kappa_cl) c' with kappa_cl = or * s0''/g^3
    const double ds = s0_.deriv(t), d2s = s0_.deriv2(t);
    const double g = std::sqrt(1.0 + ds * ds);
    const double kcl = orientation_ * d2s / (g * g * g);
    return g * std::abs(1.0 - ts * kcl);
  }
  Vec3 c, T, n, dc, dT, dn;
  frame(t, &c, &T, &n, &dc, &dT, &dn);
  Vec3 dP = std::cos(ts) * dc + std::sin(ts) * dn;
  return dP.norm();
}

double BoundaryCurve::kappa(double t) const {
  const double d = 1e-5;
  return (std::log(ell(t, d)) - std::log(ell(t, -d))) / (2.0 * d);
}

double BoundaryCurve::length() const {
  const int n = 512;
  double L = 0.0;
  for (int i = 0; i < n; ++i) L += ell(theta_period_ * i / n, 0.0);
  return L * theta_period_ / n;
}

bool BoundaryCurve::tube_invert(double theta_b, double s_b, double* ttheta,
                                double* ts) const {
  double t = theta_b, u = s_b - s0_.eval(theta_b);
  for (int it = 0; it < 50; ++it) {
    double tb, sb;
    tube_point(t, u, &tb, &sb);
    double r0 = tb - theta_b, r1 = sb - s_b;
    if (geom_ == Geometry::Sphere || geom_ == Geometry::FlatTorus) {
      r0 = std::remainder(r0, theta_period_);
    }
    if (std::abs(r0) + std::abs(r1) < 1e-13) {
      *ttheta = t;
      *ts = u;
      return true;
    }
    const double d = 1e-6;
    double tb1, sb1, tb2, sb2;
    tube_point(t + d, u, &tb1, &sb1);
    tube_point(t, u + d, &tb2, &sb2);
    double j00 = std::remainder(tb1 - tb, theta_period_) / d;
    double j01 = std::remainder(tb2 - tb, theta_period_) / d;
    double j10 = (sb1 - sb) / d, j11 = (sb2 - sb) / d;
    double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-14) return false;
    t -= (j11 * r0 - j01 * r1) / det;
    u -= (-j10 * r0 + j00 * r1) / det;
  }
  return false;
}

std::vector<double> geodesic_curvature(const BoundaryCurve& curve, int n_samples) {
  std::vector<double> k(n_samples);
  for (int i = 0; i < n_samples; ++i)
    k[i] = curve.kappa(curve.theta_period() * i / n_samples);
  return k;
}

}  // namespace renlab
