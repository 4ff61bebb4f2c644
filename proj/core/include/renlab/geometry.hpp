#ifndef RENLAB_GEOMETRY_HPP_
#define RENLAB_GEOMETRY_HPP_

#include <functional>
#include <vector>

#include "renlab/metric.hpp"

namespace renlab {

// A coordinate patch carrying a metric: evaluation plus (analytic or FD)
// component derivatives.  Used for the FG collar chart of a model and for the
// solver charts.
struct MetricFrame {
  std::function<Mat3(const Vec3&)> g;
  std::function<std::array<Mat3, 3>(const Vec3&)> dg;  // may be empty -> FD
  // Per-coordinate finite-difference steps; a negative entry means
  // "scale with coordinate 0" (the bdf-like direction).
  Vec3 fd_step = Vec3(-1e-3, 1e-5, 1e-5);

  std::array<Mat3, 3> partials(const Vec3& q) const;
};

MetricFrame fg_frame(const MetricModel& m, Which which);

// gamma[k](i,j) = Gamma^k_{ij}
using Christoffel = std::array<Mat3, 3>;

Christoffel christoffel_at(const MetricFrame& f, const Vec3& q);
Christoffel christoffel(const MetricModel& m, const ChartPoint& p, Which which);

struct CurvatureResult {
  // riemann[l][i](j,k) = R^l_{ijk} with R(e_i,e_j)e_k = R^l_{ijk} e_l
  std::array<std::array<Mat3, 3>, 3> riemann;
  Mat3 ricci;
  double scalar = 0.0;

  // <R(X,Y)Z, W> with lowered index.
  double r4(const Mat3& g, const Vec3& X, const Vec3& Y, const Vec3& Z,
            const Vec3& W) const;
};

CurvatureResult curvature_at(const MetricFrame& f, const Vec3& q);
CurvatureResult curvature(const MetricModel& m, const ChartPoint& p, Which which);

// nabla^2 V - (Delta V) g - V Ric at p (physical metric); zero for exact
// static models.
Mat3 static_residual(const MetricModel& m, const ChartPoint& p);

struct GeodesicPath {
  struct Sample {
    double t;
    Vec3 q;
    Vec3 v;
  };
  std::vector<Sample> samples;
  Which which = Which::Compactified;
  double speed_drift = 0.0;
  bool exited_chart = false;
};

// Classical fixed-step RK4 on the geodesic equation.  For the physical metric
// the path must keep x > 0; leaving the chart yields a partial path with the
// exit flag set.
GeodesicPath geodesic_integrate(const MetricModel& m, const ChartPoint& p, const Vec3& v,
                                double T, int n_steps, Which which);
GeodesicPath geodesic_integrate_frame(const MetricFrame& f, const Vec3& q0, const Vec3& v0,
                                      double T, int n_steps, double x_min, double x_max);

}  // namespace renlab

#endif  // RENLAB_GEOMETRY_HPP_
