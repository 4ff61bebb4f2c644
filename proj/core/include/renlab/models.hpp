#ifndef RENLAB_MODELS_HPP_
#define RENLAB_MODELS_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "renlab/metric.hpp"
#include "renlab/series.hpp"

namespace renlab {

// ---------------------------------------------------------------------------
// Hyperbolic space, Poincare ball model, round S^2 conformal boundary.
// Canonical boundary coordinates: theta = azimuth, s = latitude from the
// equator.  FG chart: g = (dx^2 + (1 - x^2/4)^2 g_{S^2})/x^2 with
// r_ball = (2 - x)/(2 + x); V = (1 + x^2/4)/x.
class Hyperbolic3Model : public MetricModel {
 public:
  Hyperbolic3Model();

  std::string name() const override { return "hyperbolic3"; }
  double theta_period() const override { return 2.0 * kPi; }
  double s_period() const override { return kPi; }  // latitude band (-pi/2, pi/2)
  bool s_periodic() const override { return false; }
  double x_max() const override { return 2.0; }

  Mat3 fg_metric(const ChartPoint& p) const override;
  std::array<Mat3, 3> fg_metric_partials(const ChartPoint& p) const override;
  bool has_closed_form_partials() const override { return true; }
  double V(const ChartPoint& p) const override;
  Vec3 dV(const ChartPoint& p) const override;

  Mat2 h(double theta, double s) const override;
  double R_h(double, double) const override { return 2.0; }
  Mat2 h3(double, double) const override { return Mat2::Zero(); }

  long double V_ld(long double x, long double, long double) const override {
    return (1.0L + 0.25L * x * x) / x;
  }
  void gbar_ld(long double x, long double, long double s,
               long double out[4]) const override {
    const long double W = 1.0L - 0.25L * x * x, U = 1.0L + 0.25L * x * x;
    const long double c = cosl(s);
    out[0] = 1.0L / (U * U);
    out[1] = W * W * c * c / (U * U);
    out[2] = 0.0L;
    out[3] = W * W / (U * U);
  }

  // Ball-model cross-checks.  Ball coordinates (rho, phi, az): Euclidean
  // radius, polar angle, azimuth.
  static double ball_rho_of_x(double x) { return (2.0 - x) / (2.0 + x); }
  static Mat3 ball_metric(double rho, double phi);
  Vec3 to_ball(const ChartPoint& p) const;  // (rho, phi, az)
};

// ---------------------------------------------------------------------------
// Horowitz-Myers soliton, n = 3.  Native chart (r, theta, s), r >= 1;
// FG chart x in (0, 2^{2/3}] with r = (1 + x^3/4)^{2/3}/x, V = r.
class HorowitzMyersModel : public MetricModel {
 public:
  HorowitzMyersModel(double theta_period = 4.0 * kPi / 3.0, double s_period = 1.0);

  std::string name() const override { return "horowitz_myers"; }
  double theta_period() const override { return theta_period_; }
  double s_period() const override { return s_period_; }
  bool s_periodic() const override { return true; }
  double x_max() const override;

  Mat3 fg_metric(const ChartPoint& p) const override;
  std::array<Mat3, 3> fg_metric_partials(const ChartPoint& p) const override;
  bool has_closed_form_partials() const override { return true; }
  double V(const ChartPoint& p) const override;
  Vec3 dV(const ChartPoint& p) const override;

  Mat2 h(double, double) const override { return Mat2::Identity(); }
  double R_h(double, double) const override { return 0.0; }
  Mat2 h3(double, double) const override;

  long double V_ld(long double x, long double, long double) const override {
    return powl(1.0L + 0.25L * x * x * x, 2.0L / 3.0L) / x;
  }
  void gbar_ld(long double x, long double, long double,
               long double out[4]) const override {
    const long double u = 0.25L * x * x * x;
    const long double a = 1.0L - u, b = 1.0L + u;
    out[0] = powl(b, -4.0L / 3.0L);
    out[1] = (a / b) * (a / b);
    out[2] = 0.0L;
    out[3] = 1.0L;
  }

  // Tangential profile functions of the FG bracket:
  // g = (dx^2 + P(x) dtheta^2 + Q(x) ds^2)/x^2.
  static double P(double x);
  static double Q(double x);
  static double dP(double x);
  static double dQ(double x);

  static double r_of_x(double x);
  static Mat3 native_metric(double r);

 private:
  double theta_period_;
  double s_period_;
};

// ---------------------------------------------------------------------------
// Formal background prescribed by its boundary data: the collar metric is the
// truncated series (dx^2 (1 - R_h x^2/4 ... ) + h - (R_h/4) x^2 h + x^3 h3)/x^2
// and 1/V the matching series.  Valid in the collar only.
class PrescribedFGModel : public MetricModel {
 public:
  using ScalarFn = std::function<double(double, double)>;
  using TensorFn = std::function<Mat2(double, double)>;

  // h must have the warped form f(theta)^2 dtheta^2 + ds^2 on the torus.
  PrescribedFGModel(ScalarFn f_warp, TensorFn h3, double theta_period, double s_period,
                    double x_valid = 0.5);

  std::string name() const override { return "prescribed_fg"; }
  double theta_period() const override { return theta_period_; }
  double s_period() const override { return s_period_; }
  bool s_periodic() const override { return true; }
  double x_max() const override { return x_valid_; }

  Mat3 fg_metric(const ChartPoint& p) const override;
  double V(const ChartPoint& p) const override;

  Mat2 h(double theta, double s) const override;
  double R_h(double theta, double s) const override;
  Mat2 h3(double theta, double s) const override { return h3_(theta, s); }

  // Optional perturbation of the potential (for static-residual tests).
  void perturb_potential(ScalarFn dv) { v_perturb_ = std::move(dv); }

  long double V_ld(long double x, long double theta, long double s) const override;
  void gbar_ld(long double x, long double theta, long double s,
               long double out[4]) const override;

 private:
  ScalarFn f_warp_;
  TensorFn h3_;
  double theta_period_, s_period_, x_valid_;
  ScalarFn v_perturb_;
};

std::shared_ptr<Hyperbolic3Model> hyperbolic3();
std::shared_ptr<HorowitzMyersModel> horowitz_myers(double theta_period = 4.0 * kPi / 3.0,
                                                   double s_period = 1.0);
// Warped-product torus boundary h = f^2 dtheta^2 + ds^2 with prescribed
// Neumann data; bulk backed by the truncated series.
std::shared_ptr<PrescribedFGModel> warped_torus(PrescribedFGModel::ScalarFn f,
                                                PrescribedFGModel::TensorFn h3,
                                                double theta_period, double s_period);

// ---------------------------------------------------------------------------
struct BoundaryData {
  Field h;     // tensor
  Field R_h;   // scalar
  Field h3;    // tensor
  Field mu;    // mass aspect, 3 tr_h h3
  double mass = 0.0;

  double tr_h3_max_dev(double expected) const;
};

// Exact data for the built-in models, grid-sampled; mu = 3 tr_h h3 pointwise
// and mass = integral of mu over (Sigma, h).
BoundaryData boundary_data(const MetricModel& m);

}  // namespace renlab

#endif  // RENLAB_MODELS_HPP_
