#include "renlab/series.hpp"

#include <algorithm>

namespace renlab {

namespace {
// Smallest |c0| over the grid; inversion and fractional powers need this
// bounded away from zero.
double min_abs_leading(const PowerSeries& a) {
  return a.coeffs[0].c[0].abs().minCoeff();
}
}  // namespace

PowerSeries PowerSeries::zero(const BoundaryGrid& g, int order, FieldKind kind) {
  PowerSeries s;
  s.kind = kind;
  s.grid = g;
  for (int k = 0; k <= order; ++k)
    s.coeffs.push_back(kind == FieldKind::Scalar ? Field::scalar(g) : Field::tensor(g));
  return s;
}

PowerSeries PowerSeries::constant(const BoundaryGrid& g, const std::vector<double>& c) {
  PowerSeries s = zero(g, static_cast<int>(c.size()) - 1, FieldKind::Scalar);
  for (size_t k = 0; k < c.size(); ++k) s.coeffs[k] = Field::scalar(g, c[k]);
  return s;
}

Field PowerSeries::eval(double x) const {
  Field acc = coeffs.back();
  for (int k = order() - 1; k >= 0; --k) {
    acc *= x;
    acc += coeffs[k];
  }
  return acc;
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
  if (a.kind != b.kind) throw ModelInconsistency("series_add: kind mismatch");
  int n = std::min(a.order(), b.order());
  PowerSeries out = PowerSeries::zero(a.grid, n, a.kind);
  for (int k = 0; k <= n; ++k) out.coeffs[k] = a.coeffs[k] + b.coeffs[k];
  return out;
}

PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b) {
  return series_add(a, series_scale(b, -1.0));
}

PowerSeries series_scale(const PowerSeries& a, double c) {
  PowerSeries out = a;
  for (auto& f : out.coeffs) f *= c;
  return out;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
  // Valuation of a factor shifts the window in which the product is exact.
  auto valuation = [](const PowerSeries& s) {
    for (int k = 0; k <= s.order(); ++k)
      if (s.coeffs[k].max_norm() != 0.0) return k;
    return s.order() + 1;
  };
  int va = valuation(a), vb = valuation(b);
  int n = std::min(a.order() + vb, b.order() + va);
  n = std::min(n, a.order() + b.order());
  FieldKind kind =
      (a.kind == FieldKind::SymTensor || b.kind == FieldKind::SymTensor)
          ? FieldKind::SymTensor
          : FieldKind::Scalar;
  PowerSeries out = PowerSeries::zero(a.grid, n, kind);
  for (int k = 0; k <= n; ++k) {
    for (int i = std::max(0, k - b.order()); i <= std::min(k, a.order()); ++i)
      out.coeffs[k] += mul_fields(a.coeffs[i], b.coeffs[k - i]);
  }
  return out;
}

PowerSeries series_invert(const PowerSeries& a) {
  if (a.kind != FieldKind::Scalar) throw ModelInconsistency("series_invert: scalar only");
  if (min_abs_leading(a) < 1e-14)
    throw SingularSeries("series_invert: leading coefficient vanishes");
  int n = a.order();
  PowerSeries out = PowerSeries::zero(a.grid, n, FieldKind::Scalar);
  Eigen::ArrayXXd inv0 = 1.0 / a.coeffs[0].c[0];
  out.coeffs[0].c[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(a.grid.ntheta, a.grid.ns);
    for (int i = 1; i <= k; ++i) acc += a.coeffs[i].c[0] * out.coeffs[k - i].c[0];
    out.coeffs[k].c[0] = -inv0 * acc;
  }
  return out;
}

PowerSeries series_power(const PowerSeries& a, double q) {
  if (a.kind != FieldKind::Scalar) throw ModelInconsistency("series_power: scalar only");
  if (min_abs_leading(a) < 1e-14)
    throw SingularSeries("series_power: leading coefficient vanishes");
  int n = a.order();
  PowerSeries out = PowerSeries::zero(a.grid, n, FieldKind::Scalar);
  out.coeffs[0].c[0] = a.coeffs[0].c[0].pow(q);
  // Miller recurrence: n a0 b_n = sum_{k=1..n} (k(1+q) - n) a_k b_{n-k}
  for (int k = 1; k <= n; ++k) {
    Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(a.grid.ntheta, a.grid.ns);
    for (int i = 1; i <= k; ++i)
      acc += (i * (1.0 + q) - k) * a.coeffs[i].c[0] * out.coeffs[k - i].c[0];
    out.coeffs[k].c[0] = acc / (k * a.coeffs[0].c[0]);
  }
  return out;
}

PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) {
  if (outer.kind != FieldKind::Scalar || inner.kind != FieldKind::Scalar)
    throw ModelInconsistency("series_compose: scalar only");
  if (inner.coeffs[0].max_norm() != 0.0)
    throw SingularSeries("series_compose: inner series must have c0 = 0");
  int n = std::min(outer.order(), inner.order());
  PowerSeries acc = PowerSeries::zero(inner.grid, n, FieldKind::Scalar);
  acc.coeffs[0] = outer.coeffs[outer.order()];
  for (int k = outer.order() - 1; k >= 0; --k) {
    acc = series_mul(acc, inner);
    // series_mul of a full-order series with valuation-1 inner keeps order n.
    if (acc.order() < n) {
      while (acc.order() < n) acc.coeffs.push_back(Field::scalar(inner.grid));
    }
    if (acc.order() > n) acc.coeffs.resize(n + 1);
    acc.coeffs[0] += outer.coeffs[k];
  }
  return acc;
}

}  // namespace renlab
