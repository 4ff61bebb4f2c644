#ifndef RENLAB_FIELDS_HPP_
#define RENLAB_FIELDS_HPP_

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "renlab/chart.hpp"
#include "renlab/errors.hpp"

namespace renlab {

// Uniform grid on the conformal boundary.  theta is always periodic; s is
// periodic for torus boundaries and a latitude band for the sphere.
struct BoundaryGrid {
  int ntheta = 16;
  int ns = 8;
  double theta_period = 2.0 * kPi;
  double s_period = 1.0;  // band width when not periodic
  bool s_periodic = true;

  double theta(int i) const { return theta_period * i / ntheta; }
  double s(int j) const {
    return s_periodic ? s_period * j / ns : s_period * (j + 0.5) / ns - 0.5 * s_period;
  }
};

enum class FieldKind { Scalar, SymTensor };

// Scalar field or symmetric 2-tensor field sampled on a boundary grid.
// Tensor components are ordered (tt, ts, ss) in the (theta, s) frame.
struct Field {
  FieldKind kind = FieldKind::Scalar;
  std::array<Eigen::ArrayXXd, 3> c;

  static Field scalar(const BoundaryGrid& g, double v = 0.0) {
    Field f;
    f.kind = FieldKind::Scalar;
    f.c[0] = Eigen::ArrayXXd::Constant(g.ntheta, g.ns, v);
    return f;
  }
  static Field tensor(const BoundaryGrid& g, double tt = 0.0, double ts = 0.0,
                      double ss = 0.0) {
    Field f;
    f.kind = FieldKind::SymTensor;
    f.c[0] = Eigen::ArrayXXd::Constant(g.ntheta, g.ns, tt);
    f.c[1] = Eigen::ArrayXXd::Constant(g.ntheta, g.ns, ts);
    f.c[2] = Eigen::ArrayXXd::Constant(g.ntheta, g.ns, ss);
    return f;
  }

  int ncomp() const { return kind == FieldKind::Scalar ? 1 : 3; }

  Field& operator+=(const Field& o) {
    for (int k = 0; k < ncomp(); ++k) c[k] += o.c[k];
    return *this;
  }
  Field& operator-=(const Field& o) {
    for (int k = 0; k < ncomp(); ++k) c[k] -= o.c[k];
    return *this;
  }
  Field& operator*=(double a) {
    for (int k = 0; k < ncomp(); ++k) c[k] *= a;
    return *this;
  }

  double max_norm() const {
    double m = 0.0;
    for (int k = 0; k < ncomp(); ++k) m = std::max(m, c[k].abs().maxCoeff());
    return m;
  }
};

inline Field operator+(Field a, const Field& b) { return a += b; }
inline Field operator-(Field a, const Field& b) { return a -= b; }
inline Field operator*(Field a, double s) { return a *= s; }
inline Field operator*(double s, Field a) { return a *= s; }

// Pointwise product; scalar*scalar or scalar*tensor.
inline Field mul_fields(const Field& a, const Field& b) {
  if (a.kind == FieldKind::SymTensor && b.kind == FieldKind::SymTensor)
    throw ModelInconsistency("tensor-tensor field products are not defined");
  const Field& sc = (a.kind == FieldKind::Scalar) ? a : b;
  const Field& other = (a.kind == FieldKind::Scalar) ? b : a;
  Field out = other;
  for (int k = 0; k < out.ncomp(); ++k) out.c[k] *= sc.c[0];
  return out;
}

// Trace of a tensor field with respect to a metric tensor field h.
inline Field trace_wrt(const Field& t, const Field& h) {
  if (t.kind != FieldKind::SymTensor || h.kind != FieldKind::SymTensor)
    throw ModelInconsistency("trace_wrt expects tensor fields");
  Field out;
  out.kind = FieldKind::Scalar;
  Eigen::ArrayXXd det = h.c[0] * h.c[2] - h.c[1] * h.c[1];
  // h^{tt} t_tt + 2 h^{ts} t_ts + h^{ss} t_ss
  out.c[0] = (h.c[2] * t.c[0] - 2.0 * h.c[1] * t.c[1] + h.c[0] * t.c[2]) / det;
  return out;
}

}  // namespace renlab

#endif  // RENLAB_FIELDS_HPP_
