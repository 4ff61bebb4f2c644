#include "renlab/solver.hpp"

#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace renlab {

int g_solver_phase = 0;

namespace {

// boundary value of the graph coordinate for a curve: latitude extension for
// the Fermi chart, s0 itself on the torus
double boundary_value(const BoundaryCurve& curve, double theta) {
  return curve.s0().eval(theta);
}

Eigen::ArrayXXd residual(GraphSurface& s) {
  s.invalidate_interp();
  GraphSurface::Derivs d = s.derivatives();
  Eigen::ArrayXXd H, V;
  mean_curvature(s, d, &H, &V);
  return H * V;
}

}  // namespace

MinimalGraph solve_minimal_graph(std::shared_ptr<const MetricModel> model,
                                 const BoundaryCurve& curve, const SolveOptions& opt) {
  auto chart = make_solve_chart(model);
  SurfGrid grid;
  grid.nr = opt.nr;
  grid.nth = opt.nth;
  grid.grading = opt.grading;
  grid.rho_pole = chart->rho_pole();
  grid.theta_period = chart->theta_period();

  GraphSurface s;
  s.chart = chart;
  s.model = model;
  s.grid = grid;
  s.closure = (grid.theta_period == 2.0 * kPi &&
               std::dynamic_pointer_cast<const Hyperbolic3Model>(model))
                  ? Closure::Cap
                  : Closure::Slice;
  s.u.resize(grid.nr, grid.nth);

  // initial guess: boundary data decaying into the bulk toward its mean
  double mean = 0.0;
  for (int j = 0; j < grid.nth; ++j) mean += boundary_value(curve, grid.theta(j));
  mean /= grid.nth;
  for (int i = 0; i < grid.nr; ++i) {
    double taper = std::pow(1.0 - grid.zeta(i), 3.0);
    for (int j = 0; j < grid.nth; ++j) {
      double bv = boundary_value(curve, grid.theta(j));
      s.u(i, j) = mean + (bv - mean) * taper;
    }
  }
  for (int j = 0; j < grid.nth; ++j) s.u(0, j) = boundary_value(curve, grid.theta(j));

  MinimalGraph out{s, curve, {}};
  GraphSurface& surf = out.surface;

  const int nr = grid.nr, nth = grid.nth;
  const int nun = (nr - 1) * nth;  // unknowns: rows 1..nr-1
  auto idx = [&](int i, int j) { return (i - 1) * nth + ((j % nth + nth) % nth); };

  g_solver_phase = 1;
  Eigen::ArrayXXd F = residual(surf);
  double rmax = F.bottomRows(nr - 1).abs().maxCoeff();
  out.report.residuals.push_back(rmax);

  Eigen::SparseMatrix<double> J(nun, nun);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    g_solver_phase = 2;
    // convergence on max |H| rather than the scaled residual
    {
      GraphSurface::Derivs d = surf.derivatives();
      Eigen::ArrayXXd H, V;
      mean_curvature(surf, d, &H, &V);
      out.report.final_max_H = H.bottomRows(nr - 1).abs().maxCoeff();
      if (out.report.final_max_H < opt.tol_H) {
        out.report.converged = true;
        break;
      }
    }

    // Jacobian by stencil-colored finite differences.  The dependence box of
    // a residual node spans radial offsets -2..+3 and theta offsets -2..+2.
    // Bulk sweep: colors (i mod 6, j mod dth) with dth a divisor of nth of at
    // least 5, valid away from the pole.  Rows through which the pole mirror
    // folds (the last three) get a per-column sweep with partial residuals,
    // since the mirror's half-period theta shift breaks any divisor coloring.
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(nun) * 26);
    const double dj = 1e-7;
    int dth = nth;
    for (int d = 5; d <= nth; ++d)
      if (nth % d == 0) {
        dth = d;
        break;
      }
    const int pole_rows = 3;  // residual rows nr-3..nr-1 handled separately
    for (int ci = 0; ci < 6; ++ci)
      for (int cj = 0; cj < dth; ++cj) {
        GraphSurface pert = surf;
        for (int i = 1; i < nr; ++i)
          for (int j = 0; j < nth; ++j)
            if (i % 6 == ci && j % dth == cj) pert.u(i, j) += dj;
        Eigen::ArrayXXd Fp = residual(pert);
        for (int i = 1; i < nr - pole_rows; ++i)
          for (int j = 0; j < nth; ++j) {
            double der = (Fp(i, j) - F(i, j)) / dj;
            if (der == 0.0) continue;
            int found_pi = -1, found_pj = -1;
            for (int oi = -2; oi <= 3 && found_pi < 0; ++oi)
              for (int oj = -2; oj <= 2; ++oj) {
                int pi = i + oi, pj = ((j + oj) % nth + nth) % nth;
                if (pi >= nr) {
                  pi = 2 * nr - 1 - pi;
                  pj = (pj + nth / 2) % nth;
                }
                if (pi < 1 || pi >= nr) continue;
                if (pi % 6 == ci && pj % dth == cj) {
                  found_pi = pi;
                  found_pj = pj;
                  break;
                }
              }
            if (found_pi >= 0)
              trips.emplace_back(idx(i, j), idx(found_pi, found_pj), der);
          }
      }
    // pole sweep: perturb single nodes in the last five rows (the dependence
    // sources of the last three residual rows) and difference partial rows
    {
      const int rlo = std::max(1, nr - pole_rows);
      Eigen::ArrayXXd H0, V0;
      mean_curvature_rows(surf, rlo, nr - 1, surf.derivatives_rows(rlo, nr - 1), &H0,
                          &V0);
      Eigen::ArrayXXd F0 = H0 * V0;
      for (int pi = std::max(1, nr - 5); pi < nr; ++pi)
        for (int pj = 0; pj < nth; ++pj) {
          GraphSurface pert = surf;
          pert.u(pi, pj) += dj;
          Eigen::ArrayXXd Hp, Vp;
          mean_curvature_rows(pert, rlo, nr - 1, pert.derivatives_rows(rlo, nr - 1),
                              &Hp, &Vp);
          for (int i = rlo; i < nr; ++i)
            for (int j = 0; j < nth; ++j) {
              double der = (Hp(i, j) * Vp(i, j) - F0(i, j)) / dj;
              if (der != 0.0) trips.emplace_back(idx(i, j), idx(pi, pj), der);
            }
        }
    }
    J.setZero();
    J.setFromTriplets(trips.begin(), trips.end());
    J.makeCompressed();
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw SingularSurface("minimal-graph Newton: singular Jacobian");

    Eigen::VectorXd rhs(nun);
    for (int i = 1; i < nr; ++i)
      for (int j = 0; j < nth; ++j) rhs(idx(i, j)) = -F(i, j);
    Eigen::VectorXd du = lu.solve(rhs);

    // damped line search on the max-residual; trials that leave the chart
    // count as no-decrease
    g_solver_phase = 4;
    double alpha = 1.0;
    Eigen::ArrayXXd Fnew;
    double rnew = 0.0;
    while (true) {
      GraphSurface trial = surf;
      for (int i = 1; i < nr; ++i)
        for (int j = 0; j < nth; ++j) trial.u(i, j) += alpha * du(idx(i, j));
      bool ok = true;
      try {
        Fnew = residual(trial);
        rnew = Fnew.bottomRows(nr - 1).abs().maxCoeff();
        if (!std::isfinite(rnew)) ok = false;
      } catch (const SingularSurface&) {
        ok = false;
      } catch (const SingularEvaluation&) {
        ok = false;
      }
      if (ok && (rnew < (1.0 - 0.25 * alpha) * rmax || alpha <= opt.damping_floor)) {
        surf = trial;
        break;
      }
      if (alpha <= opt.damping_floor)
        throw SingularSurface("minimal-graph Newton stalled at the damping floor");
      alpha *= 0.5;
    }
    if (rmax > 0.0 && rmax < 1.0)
      out.report.quadratic_ratios.push_back(rnew / (rmax * rmax));
    F = Fnew;
    rmax = rnew;
    out.report.residuals.push_back(rmax);
    out.report.iterations = iter + 1;
  }
  if (!out.report.converged) {
    GraphSurface::Derivs d = surf.derivatives();
    Eigen::ArrayXXd H, V;
    mean_curvature(surf, d, &H, &V);
    out.report.final_max_H = H.bottomRows(nr - 1).abs().maxCoeff();
    out.report.converged = out.report.final_max_H < opt.tol_H;
  }
  surf.invalidate_interp();
  return out;
}

}  // namespace renlab
