#include "renlab/expansion.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>

namespace renlab {

namespace {
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

std::vector<double> solve_powers(const std::vector<double>& xs,
                                 const std::vector<long double>& ys,
                                 const std::vector<int>& powers, double xref,
                                 double* residual) {
  const int n = static_cast<int>(xs.size());
  const int p = static_cast<int>(powers.size());
  MatL A(n, p);
  VecL b(n);
  for (int i = 0; i < n; ++i) {
    b(i) = ys[i];
    for (int j = 0; j < p; ++j)
      A(i, j) = std::pow(static_cast<long double>(xs[i] / xref), powers[j]);
  }
  VecL c = A.colPivHouseholderQr().solve(b);
  if (residual) {
    VecL r = A * c - b;
    long double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(r(i)));
    *residual = static_cast<double>(m);
  }
  std::vector<double> out(p);
  for (int j = 0; j < p; ++j)
    out[j] = static_cast<double>(c(j) / std::pow(static_cast<long double>(xref), powers[j]));
  return out;
}
}  // namespace

std::vector<double> Ladder::values() const {
  std::vector<double> xs(K);
  for (int k = 0; k < K; ++k) xs[k] = x0 * std::pow(2.0, -k);
  return xs;
}

LadderFit fit_ladder(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<int>& powers, int nuisance) {
  std::vector<long double> yl(ys.begin(), ys.end());
  return fit_ladder_ld(xs, yl, powers, nuisance);
}

LadderFit fit_ladder_ld(const std::vector<double>& xs, const std::vector<long double>& ys,
                        const std::vector<int>& powers, int nuisance) {
  LadderFit out;
  out.powers = powers;
  std::vector<int> all = powers;
  int top = powers.back();
  for (int k = 1; k <= nuisance; ++k) all.push_back(top + k);
  // keep the system overdetermined
  while (static_cast<int>(all.size()) > static_cast<int>(xs.size()) - 1 &&
         static_cast<int>(all.size()) > static_cast<int>(powers.size()))
    all.pop_back();

  const double xref = xs.front();
  out.coeff = solve_powers(xs, ys, all, xref, &out.residual);
  out.coeff.resize(powers.size());

  // nested sub-ladders (largest m points) for the convergence table
  for (int m = static_cast<int>(powers.size()) + 1; m <= static_cast<int>(xs.size()); ++m) {
    std::vector<double> sx(xs.begin(), xs.begin() + m);
    std::vector<long double> sy(ys.begin(), ys.begin() + m);
    std::vector<int> sub = powers;
    int extra = nuisance;
    while (static_cast<int>(sub.size()) + extra > m - 1 && extra > 0) --extra;
    for (int k = 1; k <= extra; ++k) sub.push_back(top + k);
    std::vector<double> c = solve_powers(sx, sy, sub, xref, nullptr);
    c.resize(powers.size());
    out.table.push_back(c);
  }
  return out;
}

std::string LadderFit::table_text() const {
  std::ostringstream os;
  os << "sub-ladder fits (rows: increasing ladder size; cols: powers";
  for (int p : powers) os << " x^" << p;
  os << ")\n";
  for (const auto& row : table) {
    for (double v : row) os << "  " << v;
    os << "\n";
  }
  return os.str();
}

bool LadderFit::converged(double tol) const {
  if (residual > tol) return false;
  if (table.size() < 3) return true;
  // the sub-ladder estimates of the top requested power must contract by at
  // least x2 somewhere once the asymptotic regime is reached, or sit at the
  // noise floor outright
  size_t j = powers.size() - 1;
  double best_ratio = 1e300, dprev = -1.0;
  for (size_t r = 1; r < table.size(); ++r) {
    double d = std::abs(table[r][j] - table[r - 1][j]);
    if (dprev > 0.0 && d > 0.0) best_ratio = std::min(best_ratio, d / dprev);
    if (dprev > 0.0 && d == 0.0) best_ratio = 0.0;
    dprev = d;
  }
  double final_d = std::abs(table[table.size() - 1][j] - table[table.size() - 2][j]);
  return best_ratio <= 0.5 || final_d <= tol;
}

PotentialExpansion potential_expansion(const MetricModel& m, int order,
                                       const Ladder& ladder) {
  const BoundaryGrid& g = m.grid;
  PotentialExpansion out{PowerSeries::zero(g, order), PowerSeries::zero(g, order), 0.0};
  std::vector<double> xs = ladder.values();
  std::vector<int> powers;
  for (int p = 0; p <= order; ++p) powers.push_back(p);

  for (int i = 0; i < g.ntheta; ++i)
    for (int j = 0; j < g.ns; ++j) {
      const double th = g.theta(i), s = g.s(j);
      std::vector<long double> ys(xs.size());
      for (size_t k = 0; k < xs.size(); ++k) ys[k] = 1.0L / m.V_ld(xs[k], th, s);
      LadderFit fit = fit_ladder_ld(xs, ys, powers);
      if (!fit.converged(1e-8))
        throw ExtractionFailure("potential_expansion did not converge", fit.table_text());
      out.max_residual = std::max(out.max_residual, fit.residual);
      for (int p = 0; p <= order; ++p) out.measured.coeff(p).c[0](i, j) = fit.coeff[p];

      Mat2 hb = m.h(th, s), t3 = m.h3(th, s);
      const double tr = t3(0, 0) / hb(0, 0) + t3(1, 1);
      double pred[5] = {0.0, 1.0, 0.0, -m.R_h(th, s) / 8.0, 0.5 * tr};
      for (int p = 0; p <= std::min(order, 4); ++p)
        out.predicted.coeff(p).c[0](i, j) = pred[p];
    }
  return out;
}

ConformalExpansion conformal_metric_expansion(const MetricModel& m, int order,
                                              const Ladder& ladder) {
  const BoundaryGrid& g = m.grid;
  ConformalExpansion out{PowerSeries::zero(g, order), PowerSeries::zero(g, order),
                         PowerSeries::zero(g, order, FieldKind::SymTensor),
                         PowerSeries::zero(g, order, FieldKind::SymTensor),
                         {}};
  std::vector<double> xs = ladder.values();
  std::vector<int> powers;
  for (int p = 0; p <= order; ++p) powers.push_back(p);

  for (int i = 0; i < g.ntheta; ++i)
    for (int j = 0; j < g.ns; ++j) {
      const double th = g.theta(i), s = g.s(j);
      std::vector<std::vector<long double>> comp(4, std::vector<long double>(xs.size()));
      for (size_t k = 0; k < xs.size(); ++k) {
        long double gb[4];
        m.gbar_ld(xs[k], th, s, gb);
        for (int c = 0; c < 4; ++c) comp[c][k] = gb[c];
      }
      for (int c = 0; c < 4; ++c) {
        LadderFit fit = fit_ladder_ld(xs, comp[c], powers);
        if (!fit.converged(1e-8))
          throw ExtractionFailure("conformal_metric_expansion did not converge",
                                  fit.table_text());
        for (int p = 0; p <= order; ++p) {
          double v = fit.coeff[p];
          if (c == 0)
            out.measured_xx.coeff(p).c[0](i, j) = v;
          else
            out.measured_tan.coeff(p).c[c - 1](i, j) = v;
        }
      }
      // predicted: gbar_xx = 1 - (R_h/4) x^2 + (tr h3) x^3;
      // tangential = h - (R_h/2) x^2 h + (h3 + (tr h3) h) x^3
      Mat2 hb = m.h(th, s), t3 = m.h3(th, s);
      const double R = m.R_h(th, s);
      const double tr = t3(0, 0) / hb(0, 0) + t3(1, 1);
      if (order >= 0) {
        out.predicted_xx.coeff(0).c[0](i, j) = 1.0;
        out.predicted_tan.coeff(0).c[0](i, j) = hb(0, 0);
        out.predicted_tan.coeff(0).c[1](i, j) = hb(0, 1);
        out.predicted_tan.coeff(0).c[2](i, j) = hb(1, 1);
      }
      if (order >= 2) {
        out.predicted_xx.coeff(2).c[0](i, j) = -0.25 * R;
        Mat2 t = -0.5 * R * hb;
        out.predicted_tan.coeff(2).c[0](i, j) = t(0, 0);
        out.predicted_tan.coeff(2).c[1](i, j) = t(0, 1);
        out.predicted_tan.coeff(2).c[2](i, j) = t(1, 1);
      }
      if (order >= 3) {
        out.predicted_xx.coeff(3).c[0](i, j) = tr;
        Mat2 t = t3 + tr * hb;
        out.predicted_tan.coeff(3).c[0](i, j) = t(0, 0);
        out.predicted_tan.coeff(3).c[1](i, j) = t(0, 1);
        out.predicted_tan.coeff(3).c[2](i, j) = t(1, 1);
      }
    }
  for (int p = 0; p <= order; ++p) {
    double d = (out.measured_xx.coeff(p) - out.predicted_xx.coeff(p)).max_norm();
    if (p <= 3)
      d = std::max(d, (out.measured_tan.coeff(p) - out.predicted_tan.coeff(p)).max_norm());
    out.discrepancy.push_back(d);
  }
  return out;
}

NeumannExtraction extract_neumann(const std::vector<Field>& gbar_tan,
                                  const std::vector<double>& xs, const Field& h,
                                  const Field& R_h) {
  if (xs.size() < 4) throw ExtractionFailure("extract_neumann: ladder too short", "");
  const int nt = static_cast<int>(h.c[0].rows());
  const int ns = static_cast<int>(h.c[0].cols());
  NeumannExtraction out;
  out.h3 = h;  // shape
  Field M = h;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ns; ++j) {
      for (int c = 0; c < 3; ++c) {
        std::vector<double> ys(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) {
          double corr = (1.0 - 0.5 * R_h.c[0](i, j) * xs[k] * xs[k]) * h.c[c](i, j);
          ys[k] = gbar_tan[k].c[c](i, j) - corr;
        }
        LadderFit fit = fit_ladder(xs, ys, {3, 4});
        if (!fit.converged(1e-7))
          throw ExtractionFailure("extract_neumann: divergent table", fit.table_text());
        out.residual = std::max(out.residual, fit.residual);
        if (out.table.empty()) out.table = fit.table_text();
        M.c[c](i, j) = fit.coeff[0];
      }
    }
  // M = h3 + (tr_h h3) h and tr_h M = 3 tr_h h3
  Field trM = trace_wrt(M, h);
  for (int c = 0; c < 3; ++c) out.h3.c[c] = M.c[c] - (trM.c[0] / 3.0) * h.c[c];
  return out;
}

NeumannExtraction extract_neumann(const MetricModel& m, const Ladder& ladder) {
  const BoundaryGrid& g = m.grid;
  std::vector<double> xs = ladder.values();
  BoundaryData bd = boundary_data(m);
  NeumannExtraction out;
  out.h3 = bd.h;
  Field M = bd.h;
  for (int i = 0; i < g.ntheta; ++i)
    for (int j = 0; j < g.ns; ++j) {
      const double th = g.theta(i), s = g.s(j);
      long double hloc[3] = {static_cast<long double>(bd.h.c[0](i, j)),
                             static_cast<long double>(bd.h.c[1](i, j)),
                             static_cast<long double>(bd.h.c[2](i, j))};
      const long double R = bd.R_h.c[0](i, j);
      for (int c = 0; c < 3; ++c) {
        std::vector<long double> ys(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) {
          long double gb[4];
          m.gbar_ld(xs[k], th, s, gb);
          long double x2 = static_cast<long double>(xs[k]) * xs[k];
          ys[k] = gb[c + 1] - (1.0L - 0.5L * R * x2) * hloc[c];
        }
        LadderFit fit = fit_ladder_ld(xs, ys, {3, 4});
        if (!fit.converged(1e-7))
          throw ExtractionFailure("extract_neumann: divergent table", fit.table_text());
        out.residual = std::max(out.residual, fit.residual);
        if (out.table.empty()) out.table = fit.table_text();
        M.c[c](i, j) = fit.coeff[0];
      }
    }
  Field trM = trace_wrt(M, bd.h);
  for (int c = 0; c < 3; ++c) out.h3.c[c] = M.c[c] - (trM.c[0] / 3.0) * bd.h.c[c];
  return out;
}

LevelsetHSeries levelset_H_series(const MetricModel& m, const Ladder& ladder) {
  const BoundaryGrid& g = m.grid;
  LevelsetHSeries out;
  for (auto& f : out.coeff) f = Field::scalar(g);
  std::vector<double> xs = ladder.values();
  for (int i = 0; i < g.ntheta; ++i)
    for (int j = 0; j < g.ns; ++j) {
      const double th = g.theta(i), s = g.s(j);
      std::vector<double> ys(xs.size());
      for (size_t k = 0; k < xs.size(); ++k) {
        ChartPoint p{xs[k], th, s};
        Mat3 gm = m.fg_metric(p);
        std::array<Mat3, 3> dg = m.fg_metric_partials(p);
        Mat2 tan, dtan;
        tan << gm(1, 1), gm(1, 2), gm(2, 1), gm(2, 2);
        dtan << dg[0](1, 1), dg[0](1, 2), dg[0](2, 1), dg[0](2, 2);
        // H = (x/2) g^{ab} d_x g_ab with the inward (increasing x) unit normal
        ys[k] = 0.5 * xs[k] * (tan.inverse() * dtan).trace();
      }
      LadderFit fit = fit_ladder(xs, ys, {0, 1, 2, 3});
      if (!fit.converged(1e-8))
        throw ExtractionFailure("levelset_H_series did not converge", fit.table_text());
      out.fit_residual = std::max(out.fit_residual, fit.residual);
      for (int p = 0; p < 4; ++p) out.coeff[p].c[0](i, j) = fit.coeff[p];
    }
  for (int p = 0; p < 4; ++p) out.measured.push_back(out.coeff[p].c[0](0, 0));
  BoundaryData bd = boundary_data(m);
  Field tr = trace_wrt(bd.h3, bd.h);
  out.predicted = {-2.0, 0.0, -0.5 * bd.R_h.c[0](0, 0), 1.5 * tr.c[0](0, 0)};
  return out;
}

}  // namespace renlab
