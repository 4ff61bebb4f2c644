#ifndef RENLAB_METRIC_HPP_
#define RENLAB_METRIC_HPP_

#include <array>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "renlab/chart.hpp"
#include "renlab/errors.hpp"
#include "renlab/fields.hpp"

namespace renlab {

using Mat2 = Eigen::Matrix2d;

// A conformally compact static background.  Components are always given in
// the collar normal form g = (dx^2 + h_x)/x^2 over the model's canonical
// boundary coordinates (theta, s); 1/V is the boundary defining function of
// that form (lim x V = 1).
class MetricModel {
 public:
  virtual ~MetricModel() = default;

  virtual std::string name() const = 0;
  virtual double theta_period() const = 0;
  virtual double s_period() const = 0;
  virtual bool s_periodic() const = 0;
  virtual double x_max() const = 0;

  // Physical metric components at p, coordinate order (x, theta, s).
  virtual Mat3 fg_metric(const ChartPoint& p) const = 0;
  // Partial derivatives of the components along (x, theta, s).
  virtual std::array<Mat3, 3> fg_metric_partials(const ChartPoint& p) const;
  virtual bool has_closed_form_partials() const { return false; }

  virtual double V(const ChartPoint& p) const = 0;
  virtual Vec3 dV(const ChartPoint& p) const;

  // Extended-precision sampling hooks for the boundary-expansion fits, where
  // double roundoff would dominate the x^3/x^4 coefficients.  out holds
  // (gbar_xx, gbar_thth, gbar_ths, gbar_ss).
  virtual long double V_ld(long double x, long double theta, long double s) const {
    return V(ChartPoint{static_cast<double>(x), static_cast<double>(theta),
                        static_cast<double>(s)});
  }
  virtual void gbar_ld(long double x, long double theta, long double s,
                       long double out[4]) const {
    ChartPoint p{static_cast<double>(x), static_cast<double>(theta),
                 static_cast<double>(s)};
    double v = V(p);
    Mat3 gb = fg_metric(p) / (v * v);
    out[0] = gb(0, 0);
    out[1] = gb(1, 1);
    out[2] = gb(1, 2);
    out[3] = gb(2, 2);
  }

  // Dirichlet data, boundary scalar curvature and Neumann data in the
  // (theta, s) frame.  h3 may be exact (built-ins) or prescribed.
  virtual Mat2 h(double theta, double s) const = 0;
  virtual double R_h(double theta, double s) const = 0;
  virtual Mat2 h3(double theta, double s) const = 0;

  BoundaryGrid grid;
};

// Evaluate the physical or compactified metric gbar = g/V^2.  x = 0 is legal
// only for the compactified metric.
MetricTensor metric_eval(const MetricModel& m, const ChartPoint& p, Which which);

}  // namespace renlab

#endif  // RENLAB_METRIC_HPP_
