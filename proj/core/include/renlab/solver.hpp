#ifndef RENLAB_SOLVER_HPP_
#define RENLAB_SOLVER_HPP_

#include "renlab/surface.hpp"

namespace renlab {

struct SolveOptions {
  int nr = 96;
  int nth = 32;
  double grading = 4.0;
  double tol_H = 1e-8;    // converged when max |H| below this on the grid
  int max_iter = 30;
  double damping_floor = std::pow(2.0, -20.0);
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residuals;         // max |V H| per iterate
  std::vector<double> quadratic_ratios;  // r_{k+1} / r_k^2 in the terminal phase
  double final_max_H = 0.0;
};

struct MinimalGraph {
  GraphSurface surface;
  BoundaryCurve curve;
  NewtonReport report;
};

// Damped Newton on the regularized residual V H[u] = 0 with Dirichlet data
// u(0, theta) = s0(theta) and polar regularity at the interior closure.  The
// orthogonality du/dx(0) = 0 is enforced by the degenerate structure of the
// equation, not imposed; extract_u3 reports the defect.
MinimalGraph solve_minimal_graph(std::shared_ptr<const MetricModel> model,
                                 const BoundaryCurve& curve,
                                 const SolveOptions& opt = SolveOptions{});

}  // namespace renlab

#endif  // RENLAB_SOLVER_HPP_
