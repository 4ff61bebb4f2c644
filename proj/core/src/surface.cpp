#include "renlab/surface.hpp"

#include <cmath>
#include <cstdio>

#include "renlab/expansion.hpp"
#include "renlab/spline.hpp"

namespace renlab {

// ---------------------------------------------------------------------------
// SolveChart

std::array<Mat3, 3> SolveChart::dgbar(const Vec3& q) const {
  const double v = V(q);
  const Vec3 dv = dV(q);
  const Mat3 gm = g(q);
  std::array<Mat3, 3> d = dg(q);
  for (int c = 0; c < 3; ++c) d[c] = d[c] / (v * v) - 2.0 * dv[c] / (v * v * v) * gm;
  return d;
}

MetricFrame SolveChart::frame(Which which) const {
  MetricFrame f;
  if (which == Which::Physical) {
    f.g = [this](const Vec3& q) { return g(q); };
    f.dg = [this](const Vec3& q) { return dg(q); };
  } else {
    f.g = [this](const Vec3& q) { return gbar(q); };
    f.dg = [this](const Vec3& q) { return dgbar(q); };
    f.fd_step = Vec3(1e-5, 1e-5, 1e-5);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Hyp3FermiChart: q = (lambda, theta, psi)

Mat3 Hyp3FermiChart::g(const Vec3& q) const {
  const double sl = std::sin(q[0]), cl = std::cos(q[0]), cp = std::cos(q[2]);
  Mat3 m = Mat3::Zero();
  m(0, 0) = 1.0 / (sl * sl);
  m(1, 1) = cl * cl / (sl * sl);
  m(2, 2) = 1.0 / (cp * cp * sl * sl);
  return m;
}

std::array<Mat3, 3> Hyp3FermiChart::dg(const Vec3& q) const {
  const double l = q[0], p = q[2];
  const double sl = std::sin(l), cl = std::cos(l), cp = std::cos(p), tp = std::tan(p);
  std::array<Mat3, 3> d;
  d.fill(Mat3::Zero());
  const double sl3 = sl * sl * sl;
  d[0](0, 0) = -2.0 * cl / sl3;
  d[0](1, 1) = -2.0 * cl / sl3;
  d[0](2, 2) = -2.0 * cl / (cp * cp * sl3);
  d[2](2, 2) = 2.0 * tp / (cp * cp * sl * sl);
  return d;
}

double Hyp3FermiChart::V(const Vec3& q) const {
  return 1.0 / (std::cos(q[2]) * std::sin(q[0]));
}

Vec3 Hyp3FermiChart::dV(const Vec3& q) const {
  const double sl = std::sin(q[0]), cl = std::cos(q[0]);
  const double cp = std::cos(q[2]), sp = std::sin(q[2]);
  return Vec3(-cl / (cp * sl * sl), 0.0, sp / (cp * cp * sl));
}

double Hyp3FermiChart::x_of(const Vec3& q) const {
  const double w = std::cos(q[2]) * std::sin(q[0]);
  return 2.0 * w / (1.0 + std::sqrt(std::max(0.0, 1.0 - w * w)));
}

void Hyp3FermiChart::boundary_coords(const Vec3& q, double* theta_b, double* s_b) const {
  const double w = std::cos(q[2]) * std::sin(q[0]);
  const double denom = std::sqrt(std::max(1e-300, 1.0 - w * w));
  *theta_b = q[1];
  *s_b = std::asin(std::clamp(std::sin(q[2]) / denom, -1.0, 1.0));
}

Vec3 Hyp3FermiChart::from_fg(double x, double theta_b, double s_b) const {
  const double w = x / (1.0 + 0.25 * x * x);
  const double X3 = std::sqrt(1.0 - w * w) * std::sin(s_b);
  const double psi = std::asin(X3);
  const double sl = std::clamp(w / std::cos(psi), -1.0, 1.0);
  return Vec3(std::asin(sl), theta_b, psi);
}

Eigen::Vector4d Hyp3FermiChart::embed(const Vec3& q) {
  const double l = q[0], t = q[1], p = q[2];
  return Eigen::Vector4d(std::cos(p) * std::cos(l) * std::cos(t),
                         std::cos(p) * std::cos(l) * std::sin(t), std::sin(p),
                         std::cos(p) * std::sin(l));
}

Eigen::Matrix<double, 4, 3> Hyp3FermiChart::embed_jacobian(const Vec3& q) {
  const double l = q[0], t = q[1], p = q[2];
  const double cl = std::cos(l), sl = std::sin(l), ct = std::cos(t), st = std::sin(t);
  const double cp = std::cos(p), sp = std::sin(p);
  Eigen::Matrix<double, 4, 3> J;
  J << -cp * sl * ct, -cp * cl * st, -sp * cl * ct,
       -cp * sl * st, cp * cl * ct, -sp * cl * st,
       0.0, 0.0, cp,
       cp * cl, 0.0, -sp * sl;
  return J;
}

Vec3 Hyp3FermiChart::chart_of(const Eigen::Vector4d& X) {
  const double psi = std::asin(std::clamp(X[2], -1.0, 1.0));
  const double cp = std::cos(psi);
  const double sl = std::clamp(X[3] / cp, -1.0, 1.0);
  return Vec3(std::asin(sl), std::atan2(X[1], X[0]), psi);
}

std::shared_ptr<SolveChart> make_solve_chart(std::shared_ptr<const MetricModel> m) {
  if (auto hm = std::dynamic_pointer_cast<const HorowitzMyersModel>(m))
    return std::make_shared<HMGlobalChart>(hm);
  if (std::dynamic_pointer_cast<const Hyperbolic3Model>(m))
    return std::make_shared<Hyp3FermiChart>();
  throw ConfigError("no solve chart for model " + m->name() +
                    " (prescribed backgrounds carry no bulk metric)");
}

// ---------------------------------------------------------------------------
// GraphSurface

double GraphSurface::uat(int i, int j) const {
  const int nr = grid.nr, nth = grid.nth;
  j = ((j % nth) + nth) % nth;
  if (i < 0) i = 0;
  if (i >= nr) {
    i = 2 * nr - 1 - i;
    j = (j + nth / 2) % nth;
  }
  return u(i, j);
}

namespace {
struct Stencil {
  int off[5];
  double c1[5];
  double c2[5];
};
const Stencil kCentral{{-2, -1, 0, 1, 2},
                       {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12},
                       {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}};
const Stencil kEdge0{{0, 1, 2, 3, 4},
                     {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25},
                     {35.0 / 12, -26.0 / 3, 19.0 / 2, -14.0 / 3, 11.0 / 12}};
const Stencil kEdge1{{-1, 0, 1, 2, 3},
                     {-0.25, -5.0 / 6, 1.5, -0.5, 1.0 / 12},
                     {11.0 / 12, -5.0 / 3, 0.5, 1.0 / 3, -1.0 / 12}};
}  // namespace

GraphSurface::Derivs GraphSurface::derivatives_rows(int rlo, int rhi) const {
  const int nr = grid.nr, nth = grid.nth;
  const double hz = grid.hz(), ht = grid.theta_period / nth;
  Derivs d;
  d.uz.setZero(nr, nth);
  d.ut.setZero(nr, nth);
  d.uzz.setZero(nr, nth);
  d.uzt.setZero(nr, nth);
  d.utt.setZero(nr, nth);
  rlo = std::max(rlo, 0);
  rhi = std::min(rhi, nr - 1);
  for (int i = rlo; i <= rhi; ++i) {
    const Stencil& st = (i == 0) ? kEdge0 : (i == 1 ? kEdge1 : kCentral);
    for (int j = 0; j < nth; ++j) {
      double vz = 0.0, vzz = 0.0, vt = 0.0, vtt = 0.0;
      for (int k = 0; k < 5; ++k) {
        double az = uat(i + st.off[k], j);
        vz += st.c1[k] * az;
        vzz += st.c2[k] * az;
        double at_ = uat(i, j + kCentral.off[k]);
        vt += kCentral.c1[k] * at_;
        vtt += kCentral.c2[k] * at_;
      }
      d.uz(i, j) = vz / hz;
      d.uzz(i, j) = vzz / (hz * hz);
      d.ut(i, j) = vt / ht;
      d.utt(i, j) = vtt / (ht * ht);
    }
  }
  for (int i = rlo; i <= rhi; ++i) {
    const Stencil& st = (i == 0) ? kEdge0 : (i == 1 ? kEdge1 : kCentral);
    for (int j = 0; j < nth; ++j) {
      // mixed derivative: theta-stencil applied to uz recomputed locally
      double v = 0.0;
      for (int k = 0; k < 5; ++k) {
        int jj = j + kCentral.off[k];
        double uzv = 0.0;
        for (int k2 = 0; k2 < 5; ++k2) uzv += st.c1[k2] * uat(i + st.off[k2], jj);
        v += kCentral.c1[k] * uzv / hz;
      }
      d.uzt(i, j) = v / ht;
    }
  }
  return d;
}


struct GraphSurface::InterpData {
  std::vector<USpline> sp;  // per theta column, over extended radial nodes
};

void GraphSurface::build_interp() const {
  if (interp_) return;
  auto data = std::make_shared<InterpData>();
  const int nr = grid.nr, nth = grid.nth;
  data->sp.resize(nth);
  for (int j = 0; j < nth; ++j) {
    std::vector<double> vals(nr + 3);
    for (int i = 0; i < nr + 3; ++i) vals[i] = uat(i, j);
    data->sp[j].build(vals, grid.hz());
  }
  interp_ = data;
}

double GraphSurface::u_interp(double zeta, int j) const {
  build_interp();
  return interp_->sp[j].eval(zeta / grid.hz());
}

double GraphSurface::u_interp2(double zeta, double theta) const {
  build_interp();
  const int nth = grid.nth;
  const double t = zeta / grid.hz();
  const double w = 2.0 * kPi / grid.theta_period;
  double acc = 0.0;
  for (int j = 0; j < nth; ++j) {
    double dj = w * (theta - grid.theta(j));
    double sd = std::sin(0.5 * dj);
    double ker = (std::abs(sd) < 1e-13)
                     ? 1.0
                     : std::sin(0.5 * nth * dj) / (nth * std::tan(0.5 * dj));
    acc += interp_->sp[j].eval(t) * ker;
  }
  return acc;
}

double GraphSurface::x_at(double zeta, int j) const {
  double z = std::max(zeta, 0.0);
  Vec3 q(grid.rho_of_zeta(z), grid.theta(j), u_interp(z, j));
  return chart->x_of(q);
}

// ---------------------------------------------------------------------------

namespace {
struct NodeGeometry {
  Mat2 G, b;
  double detG, H, b2, V;
  Vec3 nu;
};

// geometry of the graph at one node given u-derivatives in (rho, theta)
NodeGeometry node_geometry(const SolveChart& chart, const Vec3& q, double ur, double ut,
                           double urr, double urt, double utt) {
  NodeGeometry out;
  Mat3 g = chart.g(q);
  Vec3 Tr(1.0, 0.0, ur), Tt(0.0, 1.0, ut);
  out.G << Tr.dot(g * Tr), Tr.dot(g * Tt), Tr.dot(g * Tt), Tt.dot(g * Tt);
  out.detG = out.G(0, 0) * out.G(1, 1) - out.G(0, 1) * out.G(0, 1);
  if (out.detG <= 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "degenerate tangent plane at rho=%.6g th=%.6g f=%.6g detG=%.3e ur=%.3e ut=%.3e",
                  q[0], q[1], q[2], out.detG, ur, ut);
    throw SingularSurface(buf);
  }

  // normal covector prop. to df - ur drho - ut dtheta; unit normal with
  // positive f-component
  Vec3 ncov(-ur, -ut, 1.0);
  Vec3 nu = g.inverse() * ncov;
  nu /= std::sqrt(nu.dot(g * nu));
  out.nu = nu;

  MetricFrame fr;
  fr.g = [&chart](const Vec3& p) { return chart.g(p); };
  fr.dg = [&chart](const Vec3& p) { return chart.dg(p); };
  Christoffel G3 = christoffel_at(fr, q);
  Vec3 nu_cov = g * nu;
  auto bcomp = [&](const Vec3& Ta, const Vec3& Tb, double sec_f) {
    double acc = nu_cov[2] * sec_f;
    for (int k = 0; k < 3; ++k) acc += nu_cov[k] * Ta.dot(G3[k] * Tb);
    return -acc;
  };
  out.b(0, 0) = bcomp(Tr, Tr, urr);
  out.b(0, 1) = out.b(1, 0) = bcomp(Tr, Tt, urt);
  out.b(1, 1) = bcomp(Tt, Tt, utt);
  Mat2 bmix = out.G.inverse() * out.b;
  out.H = bmix.trace();
  out.b2 = (bmix * bmix).trace();
  out.V = chart.V(q);
  return out;
}

// convert zeta-derivatives to rho-derivatives at node i
void to_rho_derivs(const SurfGrid& grid, int i, double uz, double uzz, double uzt,
                   double* ur, double* urr, double* urt) {
  const double z = grid.zeta(i);
  const double rp = grid.drho_dzeta(z), rpp = grid.d2rho_dzeta2(z);
  *ur = uz / rp;
  *urr = (uzz - (*ur) * rpp) / (rp * rp);
  *urt = uzt / rp;
}
}  // namespace

SurfaceGeometry surface_geometry(const GraphSurface& s) {
  const int nr = s.grid.nr, nth = s.grid.nth;
  GraphSurface::Derivs d = s.derivatives();
  SurfaceGeometry out;
  out.det.resize(nr, nth);
  out.H.resize(nr, nth);
  out.b2.resize(nr, nth);
  out.bring2.resize(nr, nth);
  out.Vfield.resize(nr, nth);
  out.b.resize(nr * nth);
  out.nu.resize(nr * nth);
  out.nu_bar.resize(nr * nth);
  // the boundary row sits at x = 0 where the physical metric diverges; its
  // entries are left at the graph limits (H, b -> 0) and consumers cut at
  // eps > 0 anyway
  out.det.row(0).setZero();
  out.H.row(0).setZero();
  out.b2.row(0).setZero();
  out.bring2.row(0).setZero();
  out.Vfield.row(0).setZero();
  for (int j = 0; j < nth; ++j) {
    out.b[j].setZero();
    out.nu[j].setZero();
    out.nu_bar[j].setZero();
  }
  for (int i = 1; i < nr; ++i)
    for (int j = 0; j < nth; ++j) {
      double ur, urr, urt;
      to_rho_derivs(s.grid, i, d.uz(i, j), d.uzz(i, j), d.uzt(i, j), &ur, &urr, &urt);
      Vec3 q = s.point(i, j);
      NodeGeometry ng =
          node_geometry(*s.chart, q, ur, d.ut(i, j), urr, urt, d.utt(i, j));
      const double z = s.grid.zeta(i);
      out.det(i, j) = std::sqrt(ng.detG) * s.grid.drho_dzeta(z);  // over dzeta dtheta
      out.H(i, j) = ng.H;
      out.b2(i, j) = ng.b2;
      out.bring2(i, j) = ng.b2 - 0.5 * ng.H * ng.H;
      out.Vfield(i, j) = ng.V;
      out.b[i * nth + j] = ng.b;
      out.nu[i * nth + j] = ng.nu;
      out.nu_bar[i * nth + j] = ng.V * ng.nu;
    }
  return out;
}

void mean_curvature(const GraphSurface& s, const GraphSurface::Derivs& d,
                    Eigen::ArrayXXd* H, Eigen::ArrayXXd* Vfield) {
  mean_curvature_rows(s, 1, s.grid.nr - 1, d, H, Vfield);
}

void mean_curvature_rows(const GraphSurface& s, int rlo, int rhi,
                         const GraphSurface::Derivs& d, Eigen::ArrayXXd* H,
                         Eigen::ArrayXXd* Vfield) {
  const int nr = s.grid.nr, nth = s.grid.nth;
  H->setZero(nr, nth);
  if (Vfield) Vfield->setZero(nr, nth);
  rlo = std::max(rlo, 1);
  rhi = std::min(rhi, nr - 1);
  for (int i = rlo; i <= rhi; ++i)
    for (int j = 0; j < nth; ++j) {
      double ur, urr, urt;
      to_rho_derivs(s.grid, i, d.uz(i, j), d.uzz(i, j), d.uzt(i, j), &ur, &urr, &urt);
      Vec3 q = s.point(i, j);
      NodeGeometry ng =
          node_geometry(*s.chart, q, ur, d.ut(i, j), urr, urt, d.utt(i, j));
      (*H)(i, j) = ng.H;
      if (Vfield) (*Vfield)(i, j) = ng.V;
    }
}

// ---------------------------------------------------------------------------
// collar resampling

std::vector<double> collar_ladder() {
  std::vector<double> xs;
  for (int k = 0; k < 14; ++k) xs.push_back(0.14 * std::pow(0.78, k));
  return xs;
}

namespace {
double solve_zeta_for_x(const GraphSurface& s, int j, double x_target) {
  double lo = 0.0, hi = s.grid.zeta(s.grid.nr - 1);
  if (s.x_at(hi, j) < x_target)
    throw ResolutionError("collar cutoff beyond the graph range");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (s.x_at(mid, j) < x_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

CollarSamples resample_collar(const GraphSurface& s, const BoundaryCurve& curve,
                              const std::vector<double>& xs, int n_ttheta) {
  CollarSamples out;
  out.xs = xs;
  out.ttheta.resize(n_ttheta);
  out.u.resize(static_cast<int>(xs.size()), n_ttheta);
  out.ell.resize(1, n_ttheta);
  const SolveChart& chart = *s.chart;
  for (int jt = 0; jt < n_ttheta; ++jt) {
    const double tt = curve.theta_period() * jt / n_ttheta;
    out.ttheta[jt] = tt;
    out.ell(0, jt) = curve.ell(tt, 0.0);
    double theta = tt;
    int j0 = static_cast<int>(std::lround(tt / s.grid.theta_period * s.grid.nth));
    j0 = ((j0 % s.grid.nth) + s.grid.nth) % s.grid.nth;
    for (size_t k = 0; k < xs.size(); ++k) {
      const double x = xs[k];
      double zeta = solve_zeta_for_x(s, j0, x);
      double u_out = 0.0;
      for (int it = 0; it < 40; ++it) {
        Vec3 q(s.grid.rho_of_zeta(zeta), theta, s.u_interp2(zeta, theta));
        double tb, sb, t1, u1;
        chart.boundary_coords(q, &tb, &sb);
        if (!curve.tube_invert(tb, sb, &t1, &u1))
          throw SingularSurface("collar resampling left the tube chart");
        u_out = u1;
        double r0 = chart.x_of(q) - x;
        double r1 = std::remainder(t1 - tt, curve.theta_period());
        if (std::abs(r0) < 1e-13 * std::max(1.0, x) && std::abs(r1) < 1e-12) break;
        const double dz = 1e-7, dt = 1e-7;
        Vec3 qz(s.grid.rho_of_zeta(zeta + dz), theta, s.u_interp2(zeta + dz, theta));
        Vec3 qt(s.grid.rho_of_zeta(zeta), theta + dt, s.u_interp2(zeta, theta + dt));
        double tbz, sbz, tz1, uz1, tbt, sbt, tt1, ut1;
        chart.boundary_coords(qz, &tbz, &sbz);
        chart.boundary_coords(qt, &tbt, &sbt);
        curve.tube_invert(tbz, sbz, &tz1, &uz1);
        curve.tube_invert(tbt, sbt, &tt1, &ut1);
        double j00 = (chart.x_of(qz) - chart.x_of(q)) / dz;
        double j01 = (chart.x_of(qt) - chart.x_of(q)) / dt;
        double j10 = std::remainder(tz1 - t1, curve.theta_period()) / dz;
        double j11 = std::remainder(tt1 - t1, curve.theta_period()) / dt;
        double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-16) throw SingularSurface("collar Newton degenerate");
        zeta -= (j11 * r0 - j01 * r1) / det;
        theta -= (-j10 * r0 + j00 * r1) / det;
        zeta = std::max(zeta, 0.0);
      }
      out.u(static_cast<int>(k), jt) = u_out;
    }
  }
  return out;
}

U3Extraction extract_u3(const GraphSurface& s, const BoundaryCurve& curve,
                        const std::vector<double>& xs, int n_ttheta) {
  CollarSamples cs = resample_collar(s, curve, xs, n_ttheta);
  U3Extraction out;
  out.ttheta = cs.ttheta;
  out.u3.resize(n_ttheta);
  out.u2.resize(n_ttheta);
  out.kappa.resize(n_ttheta);
  out.ell.resize(n_ttheta);
  for (int j = 0; j < n_ttheta; ++j) {
    std::vector<double> ys(xs.size());
    for (size_t k = 0; k < xs.size(); ++k) ys[k] = cs.u(static_cast<int>(k), j);
    LadderFit fit = fit_ladder(xs, ys, {0, 1, 2, 3, 4}, 2);
    out.u2[j] = fit.coeff[2];
    out.u3[j] = fit.coeff[3];
    out.kappa[j] = curve.kappa(cs.ttheta[j]);
    out.ell[j] = cs.ell(0, j);
    out.max_c0 = std::max(out.max_c0, std::abs(fit.coeff[0]));
    out.max_c1 = std::max(out.max_c1, std::abs(fit.coeff[1]));
    out.max_u2_defect =
        std::max(out.max_u2_defect, std::abs(fit.coeff[2] + 0.5 * out.kappa[j]));
    out.fit_residual = std::max(out.fit_residual, fit.residual);
  }
  return out;
}

double U3Extraction::integral_u3_dtheta_h() const {
  const int n = static_cast<int>(u3.size());
  double dt = (n > 1) ? (ttheta[1] - ttheta[0]) : 0.0;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += u3[j] * ell[j];
  return acc * dt;
}

double U3Extraction::integral_kappa_u3_dtheta_h() const {
  const int n = static_cast<int>(u3.size());
  double dt = (n > 1) ? (ttheta[1] - ttheta[0]) : 0.0;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += kappa[j] * u3[j] * ell[j];
  return acc * dt;
}

}  // namespace renlab
