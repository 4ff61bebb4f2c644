#ifndef RENLAB_EXPANSION_HPP_
#define RENLAB_EXPANSION_HPP_

#include <string>
#include <vector>

#include "renlab/models.hpp"
#include "renlab/series.hpp"

namespace renlab {

// Halving ladder x_k = x0 * 2^{-k}, k = 0..K-1.
struct Ladder {
  double x0 = 0.1;
  int K = 6;
  std::vector<double> values() const;
};

// Coefficient extraction needs room for nuisance orders beyond the requested
// ones; the K = 6 ladder cannot carry them, so extraction entry points
// default to a denser ladder with the same x0.
inline Ladder extraction_ladder() { return Ladder{0.04, 12}; }

// Least-squares fit of samples y(x_k) to sum c_p x^p over the given powers,
// with `nuisance` extra consecutive powers appended to absorb the remainder.
// The convergence table holds the target coefficients refit on nested
// sub-ladders; extraction fails if the estimates do not settle.
struct LadderFit {
  std::vector<int> powers;
  std::vector<double> coeff;        // per requested power
  double residual = 0.0;            // max |fit - sample|
  std::vector<std::vector<double>> table;  // per sub-ladder size, per power
  std::string table_text() const;
  bool converged(double tol) const;
};

LadderFit fit_ladder(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<int>& powers, int nuisance = 3);
LadderFit fit_ladder_ld(const std::vector<double>& xs,
                        const std::vector<long double>& ys,
                        const std::vector<int>& powers, int nuisance = 3);

struct PotentialExpansion {
  PowerSeries measured;   // coefficients of 1/V
  PowerSeries predicted;  // (0, 1, 0, -R_h/8, tr h3 / 2)
  double max_residual = 0.0;
};

PotentialExpansion potential_expansion(const MetricModel& m, int order,
                                       const Ladder& ladder = extraction_ladder());

struct ConformalExpansion {
  PowerSeries measured_xx, predicted_xx;    // scalar series of gbar_xx
  PowerSeries measured_tan, predicted_tan;  // tensor series of the tangential block
  std::vector<double> discrepancy;          // max-norm per order
};

ConformalExpansion conformal_metric_expansion(const MetricModel& m, int order,
                                              const Ladder& ladder = extraction_ladder());

struct NeumannExtraction {
  Field h3;  // tensor
  std::string table;
  double residual = 0.0;
};

// Recover h3 from samples of the tangential block of gbar on a ladder:
// the x^3 coefficient of (gbar_tan - h + (R_h/2) x^2 h) equals
// h3 + (tr_h h3) h, and the trace is removed self-consistently.
NeumannExtraction extract_neumann(const std::vector<Field>& gbar_tan,
                                  const std::vector<double>& xs, const Field& h,
                                  const Field& R_h);
NeumannExtraction extract_neumann(const MetricModel& m,
                                  const Ladder& ladder = extraction_ladder());

struct LevelsetHSeries {
  std::vector<double> measured;   // fitted (H0, H1, H2, H3) at the reference grid point
  Field coeff[4];                 // fitted coefficient fields
  std::vector<double> predicted;  // (-2, 0, -R_h/2, (3/2) tr h3)
  double fit_residual = 0.0;
};

// Mean curvature of the level sets {x = eps} of the physical metric, fitted
// to a cubic in eps; inward (increasing-x) normal convention, H -> -2.
LevelsetHSeries levelset_H_series(const MetricModel& m,
                                  const Ladder& ladder = extraction_ladder());

}  // namespace renlab

#endif  // RENLAB_EXPANSION_HPP_
