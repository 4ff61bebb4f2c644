#include "renlab/models.hpp"

#include <cmath>

namespace renlab {

// ---------------------------------------------------------------------------
// base-class defaults: finite differences with x-scaled steps

std::array<Mat3, 3> MetricModel::fg_metric_partials(const ChartPoint& p) const {
  std::array<Mat3, 3> d;
  const double cs = 1e-5;
  double hx = std::max(1e-3 * p.x, 1e-8);
  if (p.x - 2.0 * hx <= 0.0) hx = 0.25 * p.x;
  const double steps[3] = {hx, cs, cs};
  for (int c = 0; c < 3; ++c) {
    Vec3 q = p.vec();
    Vec3 qp = q, qm = q;
    qp[c] += steps[c];
    qm[c] -= steps[c];
    d[c] = (fg_metric(ChartPoint::of(qp)) - fg_metric(ChartPoint::of(qm))) /
           (2.0 * steps[c]);
  }
  return d;
}

Vec3 MetricModel::dV(const ChartPoint& p) const {
  Vec3 g;
  const double cs = 1e-5;
  double hx = std::max(1e-3 * p.x, 1e-8);
  if (p.x - 2.0 * hx <= 0.0) hx = 0.25 * p.x;
  const double steps[3] = {hx, cs, cs};
  for (int c = 0; c < 3; ++c) {
    Vec3 q = p.vec();
    Vec3 qp = q, qm = q;
    qp[c] += steps[c];
    qm[c] -= steps[c];
    g[c] = (V(ChartPoint::of(qp)) - V(ChartPoint::of(qm))) / (2.0 * steps[c]);
  }
  return g;
}

MetricTensor metric_eval(const MetricModel& m, const ChartPoint& p, Which which) {
  MetricTensor out;
  out.which = which;
  if (which == Which::Physical) {
    if (p.x <= 0.0)
      throw SingularEvaluation("physical metric evaluated at x <= 0");
    out.components = m.fg_metric(p);
  } else {
    if (p.x < 0.0) throw SingularEvaluation("x < 0");
    if (p.x == 0.0) {
      Mat3 g = Mat3::Zero();
      g(0, 0) = 1.0;
      Mat2 hb = m.h(p.theta, p.s);
      g(1, 1) = hb(0, 0);
      g(1, 2) = g(2, 1) = hb(0, 1);
      g(2, 2) = hb(1, 1);
      out.components = g;
    } else {
      double v = m.V(p);
      out.components = m.fg_metric(p) / (v * v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(out.components);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw ModelInconsistency("metric not positive definite at evaluation point");
  return out;
}

// ---------------------------------------------------------------------------
// Hyperbolic3

Hyperbolic3Model::Hyperbolic3Model() {
  grid.ntheta = 16;
  grid.ns = 8;
  grid.theta_period = 2.0 * kPi;
  grid.s_period = kPi;
  grid.s_periodic = false;
}

Mat3 Hyperbolic3Model::fg_metric(const ChartPoint& p) const {
  const double x = p.x, W = 1.0 - 0.25 * x * x;
  const double c = std::cos(p.s);
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0 / (x * x);
  g(1, 1) = W * W * c * c / (x * x);
  g(2, 2) = W * W / (x * x);
  return g;
}

std::array<Mat3, 3> Hyperbolic3Model::fg_metric_partials(const ChartPoint& p) const {
  const double x = p.x, W = 1.0 - 0.25 * x * x, dW = -0.5 * x;
  const double c = std::cos(p.s), s = std::sin(p.s);
  std::array<Mat3, 3> d;
  d.fill(Mat3::Zero());
  const double x2 = x * x, x3 = x2 * x;
  d[0](0, 0) = -2.0 / x3;
  d[0](1, 1) = (2.0 * W * dW / x2 - 2.0 * W * W / x3) * c * c;
  d[0](2, 2) = 2.0 * W * dW / x2 - 2.0 * W * W / x3;
  d[2](1, 1) = -2.0 * c * s * W * W / x2;
  return d;
}

double Hyperbolic3Model::V(const ChartPoint& p) const {
  return (1.0 + 0.25 * p.x * p.x) / p.x;
}

Vec3 Hyperbolic3Model::dV(const ChartPoint& p) const {
  return Vec3(-(1.0 - 0.25 * p.x * p.x) / (p.x * p.x), 0.0, 0.0);
}

Mat2 Hyperbolic3Model::h(double, double s) const {
  Mat2 hb = Mat2::Zero();
  hb(0, 0) = std::cos(s) * std::cos(s);
  hb(1, 1) = 1.0;
  return hb;
}

Mat3 Hyperbolic3Model::ball_metric(double rho, double phi) {
  // (rho, phi, az) order; g = 4/(1-rho^2)^2 (drho^2 + rho^2 dOmega^2)
  const double f = 2.0 / (1.0 - rho * rho);
  Mat3 g = Mat3::Zero();
  g(0, 0) = f * f;
  g(1, 1) = f * f * rho * rho;
  g(2, 2) = f * f * rho * rho * std::sin(phi) * std::sin(phi);
  return g;
}

Vec3 Hyperbolic3Model::to_ball(const ChartPoint& p) const {
  return Vec3(ball_rho_of_x(p.x), 0.5 * kPi - p.s, p.theta);
}

// ---------------------------------------------------------------------------
// Horowitz-Myers

HorowitzMyersModel::HorowitzMyersModel(double theta_period, double s_period)
    : theta_period_(theta_period), s_period_(s_period) {
  grid.ntheta = 16;
  grid.ns = 8;
  grid.theta_period = theta_period;
  grid.s_period = s_period;
  grid.s_periodic = true;
}

double HorowitzMyersModel::x_max() const { return std::pow(2.0, 2.0 / 3.0); }

double HorowitzMyersModel::P(double x) {
  const double x3 = x * x * x;
  const double a = 1.0 - 0.25 * x3, b = 1.0 + 0.25 * x3;
  return a * a * std::pow(b, -2.0 / 3.0);
}

double HorowitzMyersModel::Q(double x) {
  return std::pow(1.0 + 0.25 * x * x * x, 4.0 / 3.0);
}

double HorowitzMyersModel::dP(double x) {
  const double x2 = x * x, x3 = x2 * x;
  const double a = 1.0 - 0.25 * x3, b = 1.0 + 0.25 * x3;
  return -1.5 * x2 * a * std::pow(b, -2.0 / 3.0) -
         0.5 * x2 * a * a * std::pow(b, -5.0 / 3.0);
}

double HorowitzMyersModel::dQ(double x) {
  return x * x * std::pow(1.0 + 0.25 * x * x * x, 1.0 / 3.0);
}

Mat3 HorowitzMyersModel::fg_metric(const ChartPoint& p) const {
  const double x2 = p.x * p.x;
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0 / x2;
  g(1, 1) = P(p.x) / x2;
  g(2, 2) = Q(p.x) / x2;
  return g;
}

std::array<Mat3, 3> HorowitzMyersModel::fg_metric_partials(const ChartPoint& p) const {
  const double x = p.x, x2 = x * x, x3 = x2 * x;
  std::array<Mat3, 3> d;
  d.fill(Mat3::Zero());
  d[0](0, 0) = -2.0 / x3;
  d[0](1, 1) = dP(x) / x2 - 2.0 * P(x) / x3;
  d[0](2, 2) = dQ(x) / x2 - 2.0 * Q(x) / x3;
  return d;
}

double HorowitzMyersModel::V(const ChartPoint& p) const { return r_of_x(p.x); }

Vec3 HorowitzMyersModel::dV(const ChartPoint& p) const {
  const double x = p.x, x3 = x * x * x;
  const double a = 1.0 - 0.25 * x3, b = 1.0 + 0.25 * x3;
  return Vec3(-a * std::pow(b, -1.0 / 3.0) / (x * x), 0.0, 0.0);
}

Mat2 HorowitzMyersModel::h3(double, double) const {
  Mat2 t = Mat2::Zero();
  t(0, 0) = -2.0 / 3.0;
  t(1, 1) = 1.0 / 3.0;
  return t;
}

double HorowitzMyersModel::r_of_x(double x) {
  return std::pow(1.0 + 0.25 * x * x * x, 2.0 / 3.0) / x;
}

Mat3 HorowitzMyersModel::native_metric(double r) {
  const double f = r * r * (1.0 - 1.0 / (r * r * r));
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0 / f;
  g(1, 1) = f;
  g(2, 2) = r * r;
  return g;
}

// ---------------------------------------------------------------------------
// PrescribedFG / warped torus

PrescribedFGModel::PrescribedFGModel(ScalarFn f_warp, TensorFn h3, double theta_period,
                                     double s_period, double x_valid)
    : f_warp_(std::move(f_warp)),
      h3_(std::move(h3)),
      theta_period_(theta_period),
      s_period_(s_period),
      x_valid_(x_valid) {
  grid.ntheta = 16;
  grid.ns = 8;
  grid.theta_period = theta_period;
  grid.s_period = s_period;
  grid.s_periodic = true;
}

Mat2 PrescribedFGModel::h(double theta, double s) const {
  Mat2 hb = Mat2::Zero();
  const double f = f_warp_ ? f_warp_(theta, s) : 1.0;
  hb(0, 0) = f * f;
  hb(1, 1) = 1.0;
  return hb;
}

double PrescribedFGModel::R_h(double, double) const {
  // h = f(theta)^2 dtheta^2 + ds^2 is flat (theta-arclength reparametrization).
  return 0.0;
}

Mat3 PrescribedFGModel::fg_metric(const ChartPoint& p) const {
  const double x = p.x, x2 = x * x, x3 = x2 * x;
  Mat2 hb = h(p.theta, p.s), t3 = h3_(p.theta, p.s);
  Mat2 tan = hb * (1.0 - 0.25 * R_h(p.theta, p.s) * x2) + x3 * t3;
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0 / x2;
  g(1, 1) = tan(0, 0) / x2;
  g(1, 2) = g(2, 1) = tan(0, 1) / x2;
  g(2, 2) = tan(1, 1) / x2;
  return g;
}

double PrescribedFGModel::V(const ChartPoint& p) const {
  const double x = p.x, x3 = x * x * x;
  Mat2 hb = h(p.theta, p.s), t3 = h3_(p.theta, p.s);
  const double tr = (t3(0, 0) / hb(0, 0)) + t3(1, 1);
  double inv_v = x - 0.125 * R_h(p.theta, p.s) * x3 + 0.5 * tr * x3 * x;
  double v = 1.0 / inv_v;
  if (v_perturb_) v += v_perturb_(p.theta, p.s);
  return v;
}

long double PrescribedFGModel::V_ld(long double x, long double theta, long double s) const {
  Mat2 hb = h(static_cast<double>(theta), static_cast<double>(s));
  Mat2 t3 = h3_(static_cast<double>(theta), static_cast<double>(s));
  const long double tr =
      static_cast<long double>(t3(0, 0)) / hb(0, 0) + static_cast<long double>(t3(1, 1));
  const long double R = R_h(static_cast<double>(theta), static_cast<double>(s));
  long double inv_v = x - 0.125L * R * x * x * x + 0.5L * tr * x * x * x * x;
  long double v = 1.0L / inv_v;
  if (v_perturb_) v += v_perturb_(static_cast<double>(theta), static_cast<double>(s));
  return v;
}

void PrescribedFGModel::gbar_ld(long double x, long double theta, long double s,
                                long double out[4]) const {
  Mat2 hb = h(static_cast<double>(theta), static_cast<double>(s));
  Mat2 t3 = h3_(static_cast<double>(theta), static_cast<double>(s));
  const long double R = R_h(static_cast<double>(theta), static_cast<double>(s));
  const long double x2 = x * x, x3 = x2 * x;
  // (x/V)^2 with the series potential
  const long double tr =
      static_cast<long double>(t3(0, 0)) / hb(0, 0) + static_cast<long double>(t3(1, 1));
  const long double w = 1.0L - 0.125L * R * x2 + 0.5L * tr * x3;
  const long double w2 = w * w;
  out[0] = w2;
  out[1] = (hb(0, 0) * (1.0L - 0.25L * R * x2) + x3 * t3(0, 0)) * w2;
  out[2] = (hb(0, 1) * (1.0L - 0.25L * R * x2) + x3 * t3(0, 1)) * w2;
  out[3] = (hb(1, 1) * (1.0L - 0.25L * R * x2) + x3 * t3(1, 1)) * w2;
}

std::shared_ptr<Hyperbolic3Model> hyperbolic3() {
  return std::make_shared<Hyperbolic3Model>();
}

std::shared_ptr<HorowitzMyersModel> horowitz_myers(double theta_period, double s_period) {
  return std::make_shared<HorowitzMyersModel>(theta_period, s_period);
}

std::shared_ptr<PrescribedFGModel> warped_torus(PrescribedFGModel::ScalarFn f,
                                                PrescribedFGModel::TensorFn h3,
                                                double theta_period, double s_period) {
  return std::make_shared<PrescribedFGModel>(std::move(f), std::move(h3), theta_period,
                                             s_period);
}

// ---------------------------------------------------------------------------

BoundaryData boundary_data(const MetricModel& m) {
  const BoundaryGrid& g = m.grid;
  BoundaryData out{Field::tensor(g), Field::scalar(g), Field::tensor(g),
                   Field::scalar(g), 0.0};
  double mass = 0.0;
  for (int i = 0; i < g.ntheta; ++i) {
    for (int j = 0; j < g.ns; ++j) {
      const double th = g.theta(i), s = g.s(j);
      Mat2 hb = m.h(th, s), t3 = m.h3(th, s);
      out.h.c[0](i, j) = hb(0, 0);
      out.h.c[1](i, j) = hb(0, 1);
      out.h.c[2](i, j) = hb(1, 1);
      out.R_h.c[0](i, j) = m.R_h(th, s);
      out.h3.c[0](i, j) = t3(0, 0);
      out.h3.c[1](i, j) = t3(0, 1);
      out.h3.c[2](i, j) = t3(1, 1);
    }
  }
  Field tr = trace_wrt(out.h3, out.h);
  out.mu = 3.0 * tr;
  // mass = integral of mu over (Sigma, h); cell quadrature, spectrally exact
  // for periodic trigonometric data.
  const double dth = g.theta_period / g.ntheta;
  const double ds = g.s_period / g.ns;
  for (int i = 0; i < g.ntheta; ++i)
    for (int j = 0; j < g.ns; ++j) {
      double det = out.h.c[0](i, j) * out.h.c[2](i, j) -
                   out.h.c[1](i, j) * out.h.c[1](i, j);
      mass += out.mu.c[0](i, j) * std::sqrt(det) * dth * ds;
    }
  out.mass = mass;
  return out;
}

double BoundaryData::tr_h3_max_dev(double expected) const {
  Field tr = trace_wrt(h3, h);
  Field dev = tr;
  dev.c[0] -= expected;
  return dev.max_norm();
}

}  // namespace renlab
