#ifndef RENLAB_SURFACE_HPP_
#define RENLAB_SURFACE_HPP_

#include <memory>
#include <vector>

#include "renlab/curves.hpp"
#include "renlab/geometry.hpp"
#include "renlab/models.hpp"

namespace renlab {

// ---------------------------------------------------------------------------
// A chart covering a whole solve domain: coordinates (rho, theta, f) with
// rho = 0 on the conformal boundary, rho = rho_pole at the interior closure
// (ball center / bolt), theta periodic, f the graph (fiber) coordinate.
class SolveChart {
 public:
  virtual ~SolveChart() = default;

  virtual double rho_pole() const = 0;
  virtual double theta_period() const = 0;

  virtual Mat3 g(const Vec3& q) const = 0;  // physical metric components
  virtual std::array<Mat3, 3> dg(const Vec3& q) const = 0;
  virtual double V(const Vec3& q) const = 0;
  virtual Vec3 dV(const Vec3& q) const = 0;

  // Boundary defining function of the normal form at a chart point.
  virtual double x_of(const Vec3& q) const = 0;
  // Canonical boundary coordinates of the collar projection of q.
  virtual void boundary_coords(const Vec3& q, double* theta_b, double* s_b) const = 0;
  virtual Vec3 from_fg(double x, double theta_b, double s_b) const = 0;

  Mat3 gbar(const Vec3& q) const {
    double v = V(q);
    return g(q) / (v * v);
  }
  std::array<Mat3, 3> dgbar(const Vec3& q) const;

  MetricFrame frame(Which which) const;
};

// Fermi fibration chart of hyperbolic space over the equatorial geodesic
// plane: (lambda, theta, psi) with gbar = dpsi^2 + cos^2 psi (dlambda^2 +
// cos^2 lambda dtheta^2) and V = 1/(cos psi sin lambda).  psi restricted to
// the boundary is the latitude, so latitude caps are constant graphs and no
// free interior boundary appears.
class Hyp3FermiChart : public SolveChart {
 public:
  double rho_pole() const override { return 0.5 * kPi; }
  double theta_period() const override { return 2.0 * kPi; }
  Mat3 g(const Vec3& q) const override;
  std::array<Mat3, 3> dg(const Vec3& q) const override;
  double V(const Vec3& q) const override;
  Vec3 dV(const Vec3& q) const override;
  double x_of(const Vec3& q) const override;
  void boundary_coords(const Vec3& q, double* theta_b, double* s_b) const override;
  Vec3 from_fg(double x, double theta_b, double s_b) const override;

  // round-S^3 embedding helpers; gbar-geodesics are great circles
  static Eigen::Vector4d embed(const Vec3& q);
  static Eigen::Matrix<double, 4, 3> embed_jacobian(const Vec3& q);
  static Vec3 chart_of(const Eigen::Vector4d& X);
};

// Global FG chart of the Horowitz-Myers soliton: (x, theta, s) up to the
// bolt at x = 2^{2/3}.
class HMGlobalChart : public SolveChart {
 public:
  explicit HMGlobalChart(std::shared_ptr<const HorowitzMyersModel> m) : m_(std::move(m)) {}
  double rho_pole() const override { return m_->x_max(); }
  double theta_period() const override { return m_->theta_period(); }
  Mat3 g(const Vec3& q) const override { return m_->fg_metric(ChartPoint::of(q)); }
  std::array<Mat3, 3> dg(const Vec3& q) const override {
    return m_->fg_metric_partials(ChartPoint::of(q));
  }
  double V(const Vec3& q) const override { return m_->V(ChartPoint::of(q)); }
  Vec3 dV(const Vec3& q) const override { return m_->dV(ChartPoint::of(q)); }
  double x_of(const Vec3& q) const override { return q[0]; }
  void boundary_coords(const Vec3& q, double* theta_b, double* s_b) const override {
    *theta_b = q[1];
    *s_b = q[2];
  }
  Vec3 from_fg(double x, double theta_b, double s_b) const override {
    return Vec3(x, theta_b, s_b);
  }

 private:
  std::shared_ptr<const HorowitzMyersModel> m_;
};

std::shared_ptr<SolveChart> make_solve_chart(std::shared_ptr<const MetricModel> m);

// ---------------------------------------------------------------------------
// Tensor grid of the solve domain: uniform computational coordinate zeta in
// [0, 1] with a sinh grading toward the boundary.  The pole rho = rho_pole
// sits half a radial step beyond the last node; polar regularity is imposed
// through mirror ghosts with a half-period theta shift.
struct SurfGrid {
  int nr = 96;
  int nth = 32;
  double grading = 4.0;
  double rho_pole = 1.0;
  double theta_period = 2.0 * kPi;

  double hz() const { return 1.0 / (nr - 0.5); }
  double zeta(int i) const { return i * hz(); }
  double rho_of_zeta(double z) const {
    return rho_pole * std::sinh(grading * z) / std::sinh(grading);
  }
  double drho_dzeta(double z) const {
    return rho_pole * grading * std::cosh(grading * z) / std::sinh(grading);
  }
  double d2rho_dzeta2(double z) const {
    return rho_pole * grading * grading * std::sinh(grading * z) / std::sinh(grading);
  }
  double rho(int i) const { return rho_of_zeta(zeta(i)); }
  double theta(int j) const { return theta_period * j / nth; }
};

enum class Closure { Cap, Slice, SecondCurve };

// ---------------------------------------------------------------------------
// Surface represented as a graph f = u(zeta, theta) over the solve grid.
struct GraphSurface {
  std::shared_ptr<const SolveChart> chart;
  std::shared_ptr<const MetricModel> model;
  SurfGrid grid;
  Closure closure = Closure::Cap;
  Eigen::ArrayXXd u;

  Vec3 point(int i, int j) const {
    return Vec3(grid.rho(i), grid.theta(j), u(i, j));
  }
  // ghost-aware access to u (theta wraps, pole mirror with half-period shift)
  double uat(int i, int j) const;

  struct Derivs {
    Eigen::ArrayXXd uz, ut, uzz, uzt, utt;  // in (zeta, theta)
  };
  Derivs derivatives() const { return derivatives_rows(0, grid.nr - 1); }
  Derivs derivatives_rows(int rlo, int rhi) const;

  // interpolation along a fixed grid column / at arbitrary theta
  double u_interp(double zeta, int j) const;
  double u_interp2(double zeta, double theta) const;
  void invalidate_interp() { interp_.reset(); }

  double x_at(double zeta, int j) const;  // bdf along the interpolated column

 private:
  struct InterpData;
  mutable std::shared_ptr<InterpData> interp_;
  void build_interp() const;
};

// Pointwise geometric data of the surface in the physical metric.
struct SurfaceGeometry {
  Eigen::ArrayXXd det;     // area element over dzeta dtheta
  Eigen::ArrayXXd H;       // mean curvature, b(X,Y) = -<nu, nabla_X Y>
  Eigen::ArrayXXd b2;      // |b|^2
  Eigen::ArrayXXd bring2;  // |b|^2 - H^2/2
  Eigen::ArrayXXd Vfield;
  std::vector<Mat2> b;
  std::vector<Vec3> nu;       // unit normal (physical), nu^f > 0 at the boundary
  std::vector<Vec3> nu_bar;   // gbar unit normal, = V nu
};

SurfaceGeometry surface_geometry(const GraphSurface& s);

// The mean curvature field alone (used by the Newton solver's residual).
void mean_curvature(const GraphSurface& s, const GraphSurface::Derivs& d,
                    Eigen::ArrayXXd* H, Eigen::ArrayXXd* Vfield);
void mean_curvature_rows(const GraphSurface& s, int rlo, int rhi,
                         const GraphSurface::Derivs& d, Eigen::ArrayXXd* H,
                         Eigen::ArrayXXd* Vfield);

// ---------------------------------------------------------------------------
// Collar graph u(x_k, ttheta_j) over the tube chart of the anchor curve.
struct CollarSamples {
  std::vector<double> xs;
  std::vector<double> ttheta;
  Eigen::ArrayXXd u;    // xs.size() x ttheta.size()
  Eigen::ArrayXXd ell;  // 1 x ttheta.size(): arclength density along Gamma
};

CollarSamples resample_collar(const GraphSurface& s, const BoundaryCurve& curve,
                              const std::vector<double>& xs, int n_ttheta);

struct U3Extraction {
  std::vector<double> ttheta;
  std::vector<double> u3;
  std::vector<double> u2;
  std::vector<double> kappa;
  std::vector<double> ell;            // boundary arclength density at ttheta
  double max_c0 = 0.0, max_c1 = 0.0;  // orthogonality defects
  double max_u2_defect = 0.0;         // max |c2 + kappa/2|
  double fit_residual = 0.0;

  double integral_u3_dtheta_h() const;        // int u3 dtheta_h
  double integral_kappa_u3_dtheta_h() const;  // int kappa u3 dtheta_h
};

U3Extraction extract_u3(const GraphSurface& s, const BoundaryCurve& curve,
                        const std::vector<double>& xs, int n_ttheta);

std::vector<double> collar_ladder();

}  // namespace renlab

#endif  // RENLAB_SURFACE_HPP_
