#include "renlab/geometry.hpp"

#include <cmath>

namespace renlab {

std::array<Mat3, 3> MetricFrame::partials(const Vec3& q) const {
  if (dg) return dg(q);
  std::array<Mat3, 3> d;
  for (int c = 0; c < 3; ++c) {
    double h = fd_step[c];
    if (h < 0.0) h = std::max(-h * q[0], 1e-10);
    Vec3 qp = q, qm = q;
    qp[c] += h;
    qm[c] -= h;
    d[c] = (g(qp) - g(qm)) / (2.0 * h);
  }
  return d;
}

MetricFrame fg_frame(const MetricModel& m, Which which) {
  MetricFrame f;
  if (which == Which::Physical) {
    f.g = [&m](const Vec3& q) { return m.fg_metric(ChartPoint::of(q)); };
    if (m.has_closed_form_partials())
      f.dg = [&m](const Vec3& q) { return m.fg_metric_partials(ChartPoint::of(q)); };
  } else {
    f.fd_step = Vec3(1e-5, 1e-5, 1e-5);  // compactified metric is regular at x = 0
    f.g = [&m](const Vec3& q) {
      ChartPoint p = ChartPoint::of(q);
      double v = m.V(p);
      return Mat3(m.fg_metric(p) / (v * v));
    };
    if (m.has_closed_form_partials())
      f.dg = [&m](const Vec3& q) {
        ChartPoint p = ChartPoint::of(q);
        const double v = m.V(p);
        const Vec3 dv = m.dV(p);
        const Mat3 g = m.fg_metric(p);
        std::array<Mat3, 3> d = m.fg_metric_partials(p);
        for (int c = 0; c < 3; ++c)
          d[c] = d[c] / (v * v) - 2.0 * dv[c] / (v * v * v) * g;
        return d;
      };
  }
  return f;
}

Christoffel christoffel_at(const MetricFrame& f, const Vec3& q) {
  Mat3 g = f.g(q);
  Mat3 ginv = g.inverse();
  std::array<Mat3, 3> dg = f.partials(q);
  Christoffel gamma;
  for (int k = 0; k < 3; ++k) gamma[k].setZero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 3; ++l)
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = gamma[k](j, i) = 0.5 * acc;
      }
  return gamma;
}

Christoffel christoffel(const MetricModel& m, const ChartPoint& p, Which which) {
  if (which == Which::Physical && p.x <= 0.0)
    throw SingularEvaluation("christoffel: physical metric stencil at x <= 0");
  return christoffel_at(fg_frame(m, which), p.vec());
}

CurvatureResult curvature_at(const MetricFrame& f, const Vec3& q) {
  // dGamma[c][k] = d_c Gamma^k, fourth-order five-point stencil
  std::array<Christoffel, 3> dG;
  for (int c = 0; c < 3; ++c) {
    const bool x_scaled = f.fd_step[c] < 0.0;
    double h = x_scaled ? std::max(-f.fd_step[c] * q[0], 1e-10) : f.fd_step[c];
    h *= 4.0;  // second-level differentiation; larger step controls roundoff
    if (c == 0 && x_scaled && q[0] - 2.0 * h <= 0.0) h = 0.4 * q[0];
    auto at = [&](double off) {
      Vec3 qq = q;
      qq[c] += off;
      return christoffel_at(f, qq);
    };
    Christoffel gm2 = at(-2.0 * h), gm1 = at(-h), gp1 = at(h), gp2 = at(2.0 * h);
    for (int k = 0; k < 3; ++k)
      dG[c][k] = (gm2[k] - 8.0 * gm1[k] + 8.0 * gp1[k] - gp2[k]) / (12.0 * h);
  }
  Christoffel G = christoffel_at(f, q);
  CurvatureResult out;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i) {
      out.riemann[l][i].setZero();
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double r = dG[i][l](j, k) - dG[j][l](i, k);
          for (int a = 0; a < 3; ++a)
            r += G[l](i, a) * G[a](j, k) - G[l](j, a) * G[a](i, k);
          out.riemann[l][i](j, k) = r;
        }
    }
  Mat3 g = f.g(q);
  Mat3 ginv = g.inverse();
  out.ricci.setZero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i) acc += out.riemann[i][i](j, k);
      out.ricci(j, k) = acc;
    }
  out.scalar = (ginv * out.ricci).trace();
  return out;
}

double CurvatureResult::r4(const Mat3& g, const Vec3& X, const Vec3& Y, const Vec3& Z,
                           const Vec3& W) const {
  // <R(X,Y)Z, W>
  Vec3 RZ = Vec3::Zero();
  for (int l = 0; l < 3; ++l) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          acc += riemann[l][i](j, k) * X[i] * Y[j] * Z[k];
    RZ[l] = acc;
  }
  return RZ.dot(g * W);
}

CurvatureResult curvature(const MetricModel& m, const ChartPoint& p, Which which) {
  if (which == Which::Physical && p.x <= 0.0)
    throw SingularEvaluation("curvature: physical metric stencil at x <= 0");
  return curvature_at(fg_frame(m, which), p.vec());
}

Mat3 static_residual(const MetricModel& m, const ChartPoint& p) {
  if (p.x <= 0.0) throw SingularEvaluation("static_residual at x <= 0");
  MetricFrame f = fg_frame(m, Which::Physical);
  const Vec3 q = p.vec();

  // Hessian of V: fourth-order FD of the (analytic where available) gradient.
  Mat3 hess;
  for (int c = 0; c < 3; ++c) {
    double h = (c == 0) ? std::max(2e-3 * p.x, 1e-8) : 1e-3;
    auto grad = [&](double off) {
      Vec3 qq = q;
      qq[c] += off;
      return m.dV(ChartPoint::of(qq));
    };
    hess.col(c) = (grad(-2.0 * h) - 8.0 * grad(-h) + 8.0 * grad(h) - grad(2.0 * h)) /
                  (12.0 * h);
  }
  hess = 0.5 * (hess + hess.transpose()).eval();
  Christoffel G = christoffel_at(f, q);
  Vec3 dv = m.dV(p);
  Mat3 hess_cov = hess;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double corr = 0.0;
      for (int k = 0; k < 3; ++k) corr += G[k](i, j) * dv[k];
      hess_cov(i, j) -= corr;
    }
  Mat3 g = f.g(q);
  Mat3 ginv = g.inverse();
  double lap = (ginv * hess_cov).trace();
  CurvatureResult cur = curvature_at(f, q);
  return hess_cov - lap * g - m.V(p) * cur.ricci;
}

GeodesicPath geodesic_integrate_frame(const MetricFrame& f, const Vec3& q0, const Vec3& v0,
                                      double T, int n_steps, double x_min, double x_max) {
  GeodesicPath path;
  auto acc = [&f](const Vec3& q, const Vec3& v) {
    Christoffel G = christoffel_at(f, q);
    Vec3 a;
    for (int k = 0; k < 3; ++k) a[k] = -v.dot(G[k] * v);
    return a;
  };
  auto speed = [&f](const Vec3& q, const Vec3& v) { return std::sqrt(v.dot(f.g(q) * v)); };

  const double dt = T / n_steps;
  Vec3 q = q0, v = v0;
  const double s0 = speed(q, v);
  double drift = 0.0;
  path.samples.push_back({0.0, q, v});
  for (int n = 0; n < n_steps; ++n) {
    if (q[0] <= x_min || q[0] >= x_max) {
      path.exited_chart = true;
      break;
    }
    Vec3 k1q = v, k1v = acc(q, v);
    Vec3 k2q = v + 0.5 * dt * k1v, k2v = acc(q + 0.5 * dt * k1q, v + 0.5 * dt * k1v);
    Vec3 k3q = v + 0.5 * dt * k2v, k3v = acc(q + 0.5 * dt * k2q, v + 0.5 * dt * k2v);
    Vec3 k4q = v + dt * k3v, k4v = acc(q + dt * k3q, v + dt * k3v);
    q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    path.samples.push_back({(n + 1) * dt, q, v});
    drift = std::max(drift, std::abs(speed(q, v) - s0));
  }
  path.speed_drift = drift;
  return path;
}

GeodesicPath geodesic_integrate(const MetricModel& m, const ChartPoint& p, const Vec3& v,
                                double T, int n_steps, Which which) {
  MetricFrame f = fg_frame(m, which);
  double x_min = (which == Which::Physical) ? 1e-12 : -1.0;
  GeodesicPath path =
      geodesic_integrate_frame(f, p.vec(), v, T, n_steps, x_min, m.x_max() * (1.0 + 1e-12));
  path.which = which;
  return path;
}

}  // namespace renlab
