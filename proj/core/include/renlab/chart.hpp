#ifndef RENLAB_CHART_HPP_
#define RENLAB_CHART_HPP_

#include <Eigen/Dense>

namespace renlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Collar coordinates near the conformal boundary.  x is the boundary defining
// function of the normal form (lim x V = 1), theta runs along the anchor
// curve, s is the boundary-normal coordinate on Sigma.  Coordinate order in
// all component arrays is (x, theta, s).
struct ChartPoint {
  double x = 0.0;
  double theta = 0.0;
  double s = 0.0;
  Vec3 vec() const { return Vec3(x, theta, s); }
  static ChartPoint of(const Vec3& v) { return ChartPoint{v[0], v[1], v[2]}; }
};

enum class Which { Physical, Compactified };

struct MetricTensor {
  Mat3 components = Mat3::Zero();
  Which which = Which::Physical;
};

// Reduce a periodic coordinate to [0, period).
inline double wrap_periodic(double v, double period) {
  double r = v - period * std::floor(v / period);
  if (r >= period) r -= period;
  return r;
}

}  // namespace renlab

#endif  // RENLAB_CHART_HPP_
