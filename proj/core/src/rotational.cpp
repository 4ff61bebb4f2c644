#include "renlab/rotational.hpp"

#include <cmath>

#include "renlab/expansion.hpp"
#include "renlab/spline.hpp"

namespace renlab {

namespace {

// reduced 2-metric block (rho, f) and the log of the rotation weight
struct Reduced {
  const SolveChart* chart;

  Mat2 g2(double rho, double f) const {
    Mat3 g = chart->g(Vec3(rho, 0.0, f));
    Mat2 m;
    m << g(0, 0), g(0, 2), g(2, 0), g(2, 2);
    return m;
  }
  Eigen::Vector2d grad_phi(double rho, double f) const {  // g2-gradient of ln sqrt(g_thth)
    const double d = 1e-6;
    auto phi = [this](double r, double s) {
      return 0.5 * std::log(chart->g(Vec3(r, 0.0, s))(1, 1));
    };
    Eigen::Vector2d dphi((phi(rho + d, f) - phi(rho - d, f)) / (2.0 * d),
                         (phi(rho, f + d) - phi(rho, f - d)) / (2.0 * d));
    return g2(rho, f).inverse() * dphi;
  }
  // Christoffels of g2 by finite differences
  std::array<Mat2, 2> christoffel(double rho, double f) const {
    const double d = 1e-6;
    Mat2 g = g2(rho, f);
    Mat2 gr = (g2(rho + d, f) - g2(rho - d, f)) / (2.0 * d);
    Mat2 gf = (g2(rho, f + d) - g2(rho, f - d)) / (2.0 * d);
    Mat2 ginv = g.inverse();
    const Mat2* dg[2] = {&gr, &gf};
    std::array<Mat2, 2> G;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double acc = 0.0;
          for (int l = 0; l < 2; ++l)
            acc += ginv(k, l) *
                   ((*dg[i])(j, l) + (*dg[j])(i, l) - (*dg[l])(i, j));
          G[k](i, j) = 0.5 * acc;
        }
    return G;
  }
};

}  // namespace

RotationalSurface solve_rotational(std::shared_ptr<const SolveChart> chart,
                                   double rho_waist, double f_waist, double x_stop,
                                   double step) {
  Reduced red{chart.get()};
  RotationalSurface out;
  out.chart = chart;

  // waist initial data: tangent in the +f direction, unit in g2
  Mat2 g0 = red.g2(rho_waist, f_waist);
  Eigen::Vector4d y;  // (rho, f, vrho, vf)
  y << rho_waist, f_waist, 0.0, 1.0 / std::sqrt(g0(1, 1));

  auto rhs = [&red](const Eigen::Vector4d& y) {
    Eigen::Vector2d q(y[0], y[1]), v(y[2], y[3]);
    std::array<Mat2, 2> G = red.christoffel(y[0], y[1]);
    Eigen::Vector2d gp = red.grad_phi(y[0], y[1]);
    Mat2 g = red.g2(y[0], y[1]);
    double vphi = v.dot(g * gp);
    Eigen::Vector4d dy;
    dy[0] = v[0];
    dy[1] = v[1];
    dy[2] = -v.dot(G[0] * v) + gp[0] - vphi * v[0];
    dy[3] = -v.dot(G[1] * v) + gp[1] - vphi * v[1];
    return dy;
  };

  // integrate one side; the profile is symmetric under f -> 2 f_waist - f
  std::vector<Eigen::Vector4d> side;
  side.push_back(y);
  for (int n = 0; n < 2000000; ++n) {
    Eigen::Vector4d k1 = rhs(y);
    Eigen::Vector4d k2 = rhs(y + 0.5 * step * k1);
    Eigen::Vector4d k3 = rhs(y + 0.5 * step * k2);
    Eigen::Vector4d k4 = rhs(y + step * k3);
    y += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    side.push_back(y);
    if (chart->x_of(Vec3(y[0], 0.0, y[1])) < x_stop) break;
    if (n == 1999999) throw SingularSurface("rotational profile never reached the collar");
  }

  const int m = static_cast<int>(side.size());
  out.sig.resize(2 * m - 1);
  out.rho.resize(2 * m - 1);
  out.f.resize(2 * m - 1);
  out.vrho.resize(2 * m - 1);
  out.vf.resize(2 * m - 1);
  for (int k = 0; k < m; ++k) {
    // +sigma side
    out.sig[m - 1 + k] = k * step;
    out.rho[m - 1 + k] = side[k][0];
    out.f[m - 1 + k] = side[k][1];
    out.vrho[m - 1 + k] = side[k][2];
    out.vf[m - 1 + k] = side[k][3];
    // mirrored side
    out.sig[m - 1 - k] = -k * step;
    out.rho[m - 1 - k] = side[k][0];
    out.f[m - 1 - k] = 2.0 * f_waist - side[k][1];
    out.vrho[m - 1 - k] = -side[k][2];
    out.vf[m - 1 - k] = side[k][3];
  }
  return out;
}

RotGeometry rot_geometry(const RotationalSurface& s) {
  const int n = s.size();
  RotGeometry out;
  out.H.resize(n);
  out.b2.resize(n);
  out.V.resize(n);
  out.det.resize(n);
  out.nu_bar.resize(n);
  const SolveChart& chart = *s.chart;
  MetricFrame fr;
  fr.g = [&chart](const Vec3& p) { return chart.g(p); };
  fr.dg = [&chart](const Vec3& p) { return chart.dg(p); };

  const double h = s.sig[1] - s.sig[0];
  for (int k = 0; k < n; ++k) {
    Vec3 q = s.point(k);
    Mat3 g = chart.g(q);
    Vec3 Ts(s.vrho[k], 0.0, s.vf[k]);
    Vec3 Tt(0.0, 1.0, 0.0);
    // second derivative of the profile by FD on the tangent arrays
    int km = std::max(0, k - 1), kp = std::min(n - 1, k + 1);
    Vec3 Tss((s.vrho[kp] - s.vrho[km]) / ((kp - km) * h), 0.0,
             (s.vf[kp] - s.vf[km]) / ((kp - km) * h));

    Mat2 G;
    G << Ts.dot(g * Ts), 0.0, 0.0, Tt.dot(g * Tt);
    Vec3 ncov(-Ts[2], 0.0, Ts[0]);  // annihilates Ts and Tt
    Vec3 nu = g.inverse() * ncov;
    nu /= std::sqrt(nu.dot(g * nu));

    Christoffel G3 = christoffel_at(fr, q);
    Vec3 nu_cov = g * nu;
    auto bcomp = [&](const Vec3& Ta, const Vec3& Tb, const Vec3& sec) {
      double acc = nu_cov.dot(sec);
      for (int c = 0; c < 3; ++c) acc += nu_cov[c] * Ta.dot(G3[c] * Tb);
      return -acc;
    };
    Mat2 b;
    b(0, 0) = bcomp(Ts, Ts, Tss);
    b(0, 1) = b(1, 0) = bcomp(Ts, Tt, Vec3::Zero());
    b(1, 1) = bcomp(Tt, Tt, Vec3::Zero());
    Mat2 bmix = G.inverse() * b;
    out.H[k] = bmix.trace();
    out.b2[k] = (bmix * bmix).trace();
    out.V[k] = chart.V(q);
    out.det[k] = std::sqrt(G(0, 0) * G(1, 1));
    out.nu_bar[k] = out.V[k] * nu;
  }
  // orientation continuity: the raw cross normal is smooth along the profile,
  // no flips needed; fix the global sign so the waist normal points toward
  // larger rho (outward) -- diagnostic convention only.
  return out;
}

double boundary_circle_length(const SolveChart& chart, double latitude) {
  if (dynamic_cast<const Hyp3FermiChart*>(&chart))
    return 2.0 * kPi * std::cos(latitude);
  return chart.theta_period();  // flat torus
}

namespace {
struct ProfileSplines {
  USpline rho, f, vrho, vf, x, integrand, sb;
  double h = 0.0;
  int n = 0;
};

ProfileSplines build_profile_splines(const RotationalSurface& s) {
  const SolveChart& chart = *s.chart;
  ProfileSplines sp;
  sp.n = s.size();
  sp.h = s.sig[1] - s.sig[0];
  std::vector<double> xv(sp.n), iv(sp.n), sbv(sp.n);
  for (int k = 0; k < sp.n; ++k) {
    Vec3 q = s.point(k);
    xv[k] = chart.x_of(q);
    Mat3 g = chart.g(q);
    Vec3 Ts(s.vrho[k], 0.0, s.vf[k]);
    iv[k] = std::sqrt(Ts.dot(g * Ts) * g(1, 1));
    double tb;
    chart.boundary_coords(q, &tb, &sbv[k]);
  }
  sp.rho.build(s.rho, sp.h);
  sp.f.build(s.f, sp.h);
  sp.vrho.build(s.vrho, sp.h);
  sp.vf.build(s.vf, sp.h);
  sp.x.build(xv, sp.h);
  sp.integrand.build(iv, sp.h);
  sp.sb.build(sbv, sp.h);
  return sp;
}

// node-unit position where x(sigma) crosses eps, bracketed toward an end
double cut_position(const ProfileSplines& sp, double eps, int end) {
  double lo, hi;  // x(lo) < eps <= x(hi)
  if (end == 0) {
    lo = 0.0;
    hi = 0.5 * (sp.n - 1);
  } else {
    lo = sp.n - 1.0;
    hi = 0.5 * (sp.n - 1);
  }
  if (sp.x.eval(lo) >= eps) throw ResolutionError("profile does not reach the cutoff");
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (sp.x.eval(mid) < eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

RotEndData rot_end_data(const RotationalSurface& s, const RotGeometry& geo, int end,
                        const std::vector<double>& ladder) {
  const SolveChart& chart = *s.chart;
  const int n = s.size();
  RotEndData out;

  // boundary latitude: extrapolate s_b along the profile to x -> 0
  ProfileSplines sp = build_profile_splines(s);
  std::vector<double> xs = ladder;
  std::vector<double> sb(xs.size());
  for (size_t k = 0; k < xs.size(); ++k)
    sb[k] = sp.sb.eval(cut_position(sp, xs[k], end));
  // latitude = limit; fit with the full expansion
  LadderFit fit0 = fit_ladder(xs, sb, {0, 1, 2, 3, 4}, 2);
  out.latitude = fit0.coeff[0];

  // flow direction at the end: sign of the f-ish motion of the boundary
  int kend = (end == 0) ? 0 : n - 1;
  double push = geo.nu_bar[kend][2];  // f-component of the gbar normal
  // convert to the latitude direction: d s_b/d f sign at the end
  {
    Vec3 q = s.point(kend);
    double tb, sb0, tb1, sb1;
    chart.boundary_coords(q, &tb, &sb0);
    Vec3 q1 = q;
    q1[2] += 1e-6;
    chart.boundary_coords(q1, &tb1, &sb1);
    double dsb_df = (sb1 - sb0) / 1e-6;
    out.orientation = (push * dsb_df > 0.0) ? +1 : -1;
  }
  out.length = boundary_circle_length(chart, out.latitude);

  // kappa of the end circle w.r.t. the flow direction
  if (dynamic_cast<const Hyp3FermiChart*>(&chart)) {
    BoundaryCurve c(BoundaryCurve::Geometry::Sphere, 2.0 * kPi,
                    FourierSeries::constant(out.latitude, 2.0 * kPi), out.orientation);
    out.kappa = c.kappa(0.0);
  } else {
    out.kappa = 0.0;
  }

  // collar expansion: s-tilde(x) = orientation * (s_b(x) - latitude)
  std::vector<double> us(xs.size());
  for (size_t k = 0; k < xs.size(); ++k)
    us[k] = out.orientation * (sb[k] - out.latitude);
  LadderFit fit = fit_ladder(xs, us, {0, 1, 2, 3, 4}, 2);
  out.u2 = fit.coeff[2];
  out.u3 = fit.coeff[3];
  out.u2_defect = out.u2 + 0.5 * out.kappa;
  return out;
}


double rot_area_truncated(const RotationalSurface& s, double eps) {
  ProfileSplines sp = build_profile_splines(s);
  double a = cut_position(sp, eps, 0);
  double b = cut_position(sp, eps, 1);
  if (a >= b) throw ResolutionError("rotational truncation below profile range");
  int panels = std::max(200, static_cast<int>((b - a) / 8.0));
  double A = integrate_gl4([&](double t) { return sp.integrand.eval(t); }, a, b, panels);
  return A * sp.h * s.chart->theta_period();
}

double rot_bulk_integral(const RotationalSurface& s, const RotGeometry& geo, double p) {
  const int n = s.size();
  const double h = s.sig[1] - s.sig[0];
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    acc += w * std::pow(geo.V[k], p) * geo.b2[k] * geo.det[k] * h;
  }
  return acc * s.chart->theta_period();
}

RotationalSurface rot_flow(const RotationalSurface& s, const RotGeometry& geo, double t) {
  RotationalSurface out = s;
  const SolveChart& chart = *s.chart;
  const bool hyp = dynamic_cast<const Hyp3FermiChart*>(&chart) != nullptr;
  MetricFrame fbar = chart.frame(Which::Compactified);
  for (int k = 0; k < s.size(); ++k) {
    Vec3 q = s.point(k);
    Vec3 nu_bar = geo.nu_bar[k];
    Vec3 q1, v1;
    if (hyp) {
      Eigen::Vector4d X = Hyp3FermiChart::embed(q);
      Eigen::Vector4d N = Hyp3FermiChart::embed_jacobian(q) * nu_bar;
      Eigen::Vector4d Xt = std::cos(t) * X + std::sin(t) * N;
      Eigen::Vector4d Nt = -std::sin(t) * X + std::cos(t) * N;
      q1 = Hyp3FermiChart::chart_of(Xt);
      // pull the velocity back through the jacobian at the new point
      Eigen::Matrix<double, 4, 3> J = Hyp3FermiChart::embed_jacobian(q1);
      v1 = (J.transpose() * J).ldlt().solve(J.transpose() * Nt);
    } else {
      GeodesicPath path = geodesic_integrate_frame(fbar, q, nu_bar, t,
                                                   std::max(64, int(256 * t)), -1.0, 1e9);
      q1 = path.samples.back().q;
      v1 = path.samples.back().v;
    }
    out.rho[k] = q1[0];
    out.f[k] = q1[2];
    // profile tangent after transport: recomputed below by differencing
    (void)v1;
  }
  // rebuild tangents by centered differences in sigma
  const int n = s.size();
  const double h = s.sig[1] - s.sig[0];
  for (int k = 0; k < n; ++k) {
    int km = std::max(0, k - 1), kp = std::min(n - 1, k + 1);
    out.vrho[k] = (out.rho[kp] - out.rho[km]) / ((kp - km) * h);
    out.vf[k] = (out.f[kp] - out.f[km]) / ((kp - km) * h);
  }
  return out;
}

}  // namespace renlab
