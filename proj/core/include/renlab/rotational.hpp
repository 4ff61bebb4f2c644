#ifndef RENLAB_ROTATIONAL_HPP_
#define RENLAB_ROTATIONAL_HPP_

#include "renlab/surface.hpp"

namespace renlab {

// Rotational (theta-invariant) annulus spanning two boundary circles, stored
// as a profile in the (rho, f) half-plane parametrized by arclength of the
// reduced 2-metric, waist at sigma = 0.  Minimal profiles are geodesics of
// the sqrt(g_thth)-weighted reduced metric.
struct RotationalSurface {
  std::shared_ptr<const SolveChart> chart;
  std::vector<double> sig;               // symmetric: -S..S
  std::vector<double> rho, f;            // profile coordinates
  std::vector<double> vrho, vf;          // profile tangent (d/dsigma)

  Vec3 point(int k) const { return Vec3(rho[k], 0.0, f[k]); }
  int size() const { return static_cast<int>(sig.size()); }
};

// Shoot the minimal profile symmetrically from a waist at (rho_waist, f_waist)
// until x < x_stop on both sides.
RotationalSurface solve_rotational(std::shared_ptr<const SolveChart> chart,
                                   double rho_waist, double f_waist, double x_stop,
                                   double step = 1e-3);

struct RotEndData {
  double latitude = 0.0;     // boundary s_b of the end circle
  int orientation = 0;       // +1 if the surface normal pushes the end toward +s
  double length = 0.0;       // L(circle, h)
  double kappa = 0.0;        // geodesic curvature w.r.t. the flow direction
  double u2 = 0.0, u3 = 0.0; // collar expansion coefficients
  double u2_defect = 0.0;    // u2 + kappa/2
};

struct RotGeometry {
  std::vector<double> H, b2, V, det;  // per profile sample; det over dsigma dtheta
  std::vector<Vec3> nu_bar;           // gbar unit normal (flow direction field)
};

RotGeometry rot_geometry(const RotationalSurface& s);

// whether h_thth of the boundary metric depends on latitude (sphere) or not
double boundary_circle_length(const SolveChart& chart, double latitude);

// end = 0: sigma < 0 end; end = 1: sigma > 0 end
RotEndData rot_end_data(const RotationalSurface& s, const RotGeometry& geo, int end,
                        const std::vector<double>& ladder = collar_ladder());

// truncated area of {x > eps}
double rot_area_truncated(const RotationalSurface& s, double eps);

// integral of V^p |b|^2 over the surface
double rot_bulk_integral(const RotationalSurface& s, const RotGeometry& geo, double p);

// static normal flow of the whole profile by time t (gbar geodesics; exact
// great circles on hyperbolic space)
RotationalSurface rot_flow(const RotationalSurface& s, const RotGeometry& geo, double t);

}  // namespace renlab

#endif  // RENLAB_ROTATIONAL_HPP_
