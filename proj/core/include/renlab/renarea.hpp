#ifndef RENLAB_RENAREA_HPP_
#define RENLAB_RENAREA_HPP_

#include "renlab/rotational.hpp"
#include "renlab/surface.hpp"

namespace renlab {

// Truncated area of F intersected with {x > eps} in the physical metric.
double area_truncated(const GraphSurface& s, double eps);

struct RenAFit {
  std::vector<double> epsilons;
  std::vector<double> areas;
  double L = 0.0;          // boundary length pinned in the fit
  double c = 0.0;          // renormalized area
  double slope = 0.0;      // O(eps) coefficient
  double residual = 0.0;   // max fit deviation
  double coeff_inv = 0.0;  // fitted 1/eps coefficient when left free (diagnostic)
};

// default ladder, inside the collar and above grid noise
std::vector<double> rena_ladder();

// least-squares fit A(eps) = L/eps + c + slope*eps with L pinned to the
// measured boundary length; the free-1/eps refit is attached as a diagnostic.
RenAFit renormalized_area(const GraphSurface& s, const BoundaryCurve& curve,
                          const std::vector<double>& ladder = rena_ladder());
RenAFit renormalized_area_rot(const RotationalSurface& s,
                              const std::vector<double>& ladder = rena_ladder());

// fit from precomputed (eps, area) samples with L pinned
RenAFit fit_rena(const std::vector<double>& eps, const std::vector<double>& areas,
                 double L);

struct ClosedFormRenA {
  double total = 0.0;          // -2 pi chi + integrals
  double chi_term = 0.0;       // -2 pi chi
  double willmore_term = 0.0;  // int (H^2/4 - |b-ring|^2) dA
  double weyl_term = 0.0;      // int W_1212 dA (identically 0 in 3d, measured)
  double tail_estimate = 0.0;  // quadrature tail bound for the integrands
};

// Gauss-Bonnet-type closed formula; chi from the closure kind.  Valid for
// Poincare-Einstein backgrounds; on Horowitz-Myers it is diagnostic only.
ClosedFormRenA renarea_closed_form(const GraphSurface& s);

}  // namespace renlab

#endif  // RENLAB_RENAREA_HPP_
