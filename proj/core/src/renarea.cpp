#include "renlab/renarea.hpp"

#include <cmath>

#include "renlab/spline.hpp"

namespace renlab {

namespace {

// per-column integrand machinery: splines of u and of its theta derivative
struct ColumnSplines {
  std::vector<USpline> su, sut;
};

ColumnSplines build_column_splines(const GraphSurface& s) {
  const int nr = s.grid.nr, nth = s.grid.nth;
  GraphSurface::Derivs d = s.derivatives();
  // ghost-extended theta-derivative values: the mirror map shifts theta by a
  // half period, so ut mirrors exactly like u
  auto ut_at = [&](int i, int j) {
    j = ((j % nth) + nth) % nth;
    if (i >= nr) {
      i = 2 * nr - 1 - i;
      j = (j + nth / 2) % nth;
    }
    return d.ut(i, j);
  };
  ColumnSplines cs;
  cs.su.resize(nth);
  cs.sut.resize(nth);
  for (int j = 0; j < nth; ++j) {
    std::vector<double> vu(nr + 3), vt(nr + 3);
    for (int i = 0; i < nr + 3; ++i) {
      vu[i] = s.uat(i, j);
      vt[i] = ut_at(i, j);
    }
    cs.su[j].build(vu, s.grid.hz());
    cs.sut[j].build(vt, s.grid.hz());
  }
  return cs;
}

// area-element over dzeta dtheta at interpolated zeta on column j
double area_density(const GraphSurface& s, const ColumnSplines& cs, double zeta, int j) {
  const double hz = s.grid.hz();
  const double t = zeta / hz;
  const double z = zeta;
  const double rho = s.grid.rho_of_zeta(z), rp = s.grid.drho_dzeta(z);
  const double u = cs.su[j].eval(t);
  const double ur = cs.su[j].deriv(t) / hz / rp;
  const double ut = cs.sut[j].eval(t);
  Vec3 q(rho, s.grid.theta(j), u);
  Mat3 g = s.chart->g(q);
  Vec3 Tr(1.0, 0.0, ur), Tt(0.0, 1.0, ut);
  double G00 = Tr.dot(g * Tr), G01 = Tr.dot(g * Tt), G11 = Tt.dot(g * Tt);
  return std::sqrt(std::max(0.0, G00 * G11 - G01 * G01)) * rp;
}

double cut_zeta(const GraphSurface& s, int j, double eps) {
  const int nr = s.grid.nr;
  // bracket from the boundary end; x increases into the bulk
  int i = 1;
  while (i < nr && s.chart->x_of(s.point(i, j)) < eps) ++i;
  if (i >= nr) throw ResolutionError("truncation cutoff beyond the graph range");
  double lo = s.grid.zeta(i - 1), hi = s.grid.zeta(i);
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (s.x_at(mid, j) < eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double area_truncated(const GraphSurface& s, double eps) {
  if (eps <= s.chart->x_of(s.point(1, 0)) * 0.5)
    throw ResolutionError("truncation cutoff below grid resolution");
  ColumnSplines cs = build_column_splines(s);
  const int nth = s.grid.nth;
  const double dth = s.grid.theta_period / nth;
  double A = 0.0;
  for (int j = 0; j < nth; ++j) {
    double zc = cut_zeta(s, j, eps);
    // integrate to the pole (zeta = 1); the integrand vanishes there
    double col = integrate_gl4(
        [&](double z) { return area_density(s, cs, z, j); }, zc, 1.0, 64);
    A += col;
  }
  return A * dth;
}

std::vector<double> rena_ladder() {
  return {0.04, 0.028, 0.02, 0.014, 0.01, 0.007};
}

RenAFit fit_rena(const std::vector<double>& eps, const std::vector<double>& areas,
                 double L) {
  RenAFit out;
  out.epsilons = eps;
  out.areas = areas;
  out.L = L;
  const int n = static_cast<int>(eps.size());
  // pinned-L least squares for (c, slope)
  double s00 = 0, s01 = 0, s11 = 0, b0 = 0, b1 = 0;
  for (int k = 0; k < n; ++k) {
    double y = areas[k] - L / eps[k];
    s00 += 1.0;
    s01 += eps[k];
    s11 += eps[k] * eps[k];
    b0 += y;
    b1 += y * eps[k];
  }
  double det = s00 * s11 - s01 * s01;
  out.c = (s11 * b0 - s01 * b1) / det;
  out.slope = (-s01 * b0 + s00 * b1) / det;
  for (int k = 0; k < n; ++k) {
    double fit = L / eps[k] + out.c + out.slope * eps[k];
    out.residual = std::max(out.residual, std::abs(fit - areas[k]));
  }
  // free 1/eps coefficient as a diagnostic (divergence-cancellation check)
  {
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    for (int k = 0; k < n; ++k) {
      Eigen::Vector3d row(1.0 / eps[k], 1.0, eps[k]);
      M += row * row.transpose();
      r += row * areas[k];
    }
    out.coeff_inv = M.ldlt().solve(r)[0];
  }
  return out;
}

RenAFit renormalized_area(const GraphSurface& s, const BoundaryCurve& curve,
                          const std::vector<double>& ladder) {
  std::vector<double> areas(ladder.size());
  for (size_t k = 0; k < ladder.size(); ++k) areas[k] = area_truncated(s, ladder[k]);
  return fit_rena(ladder, areas, curve.length());
}

RenAFit renormalized_area_rot(const RotationalSurface& s,
                              const std::vector<double>& ladder) {
  RotGeometry geo = rot_geometry(s);
  RotEndData e0 = rot_end_data(s, geo, 0), e1 = rot_end_data(s, geo, 1);
  std::vector<double> areas(ladder.size());
  for (size_t k = 0; k < ladder.size(); ++k) areas[k] = rot_area_truncated(s, ladder[k]);
  return fit_rena(ladder, areas, e0.length + e1.length);
}

ClosedFormRenA renarea_closed_form(const GraphSurface& s) {
  ClosedFormRenA out;
  const int chi = (s.closure == Closure::SecondCurve) ? 0 : 1;
  out.chi_term = -2.0 * kPi * chi;

  SurfaceGeometry geo = surface_geometry(s);
  const int nr = s.grid.nr, nth = s.grid.nth;
  const double dth = s.grid.theta_period / nth;
  const double hz = s.grid.hz();

  // Willmore-type integrand decays like x^2 toward the boundary; integrate
  // node values with trapezoid weights in zeta (row 0 value is the zero limit)
  double willmore = 0.0;
  for (int i = 0; i < nr; ++i) {
    double wz = (i == 0) ? 0.5 : 1.0;  // last cell toward the pole handled below
    for (int j = 0; j < nth; ++j) {
      double integrand = (0.25 * geo.H(i, j) * geo.H(i, j) - geo.bring2(i, j));
      willmore += wz * integrand * geo.det(i, j) * hz * dth;
    }
  }
  // pole half-cell: the area density vanishes at the pole, trapezoid with 0
  for (int j = 0; j < nth; ++j) {
    double integrand =
        (0.25 * geo.H(nr - 1, j) * geo.H(nr - 1, j) - geo.bring2(nr - 1, j));
    willmore += 0.25 * integrand * geo.det(nr - 1, j) * hz * dth;
  }
  out.willmore_term = willmore;

  // W_1212 on the surface orthonormal frame; identically zero in three
  // dimensions, measured over the region x > 0.05 as a numerical check
  MetricFrame fr = s.chart->frame(Which::Physical);
  GraphSurface::Derivs d = s.derivatives();
  double weyl = 0.0;
  for (int i = 1; i < nr; ++i)
    for (int j = 0; j < nth; ++j) {
      Vec3 q = s.point(i, j);
      if (s.chart->x_of(q) < 0.05) {
        out.tail_estimate = std::max(out.tail_estimate, 1e-6);
        continue;
      }
      const double z = s.grid.zeta(i);
      double rp = s.grid.drho_dzeta(z);
      Vec3 Tr(1.0, 0.0, d.uz(i, j) / rp), Tt(0.0, 1.0, d.ut(i, j));
      Mat3 g = s.chart->g(q);
      // orthonormalize
      Vec3 e1 = Tr / std::sqrt(Tr.dot(g * Tr));
      Vec3 e2 = Tt - e1 * e1.dot(g * Tt);
      e2 /= std::sqrt(e2.dot(g * e2));
      CurvatureResult cur = curvature_at(fr, q);
      double sec = cur.r4(g, e1, e2, e2, e1);
      double w1212 = sec - (e1.dot(cur.ricci * e1) + e2.dot(cur.ricci * e2) -
                            0.5 * cur.scalar);
      weyl += w1212 * geo.det(i, j) * hz * dth;
    }
  out.weyl_term = weyl;
  out.total = out.chi_term + out.willmore_term + out.weyl_term;
  return out;
}

}  // namespace renlab
