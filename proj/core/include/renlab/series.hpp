#ifndef RENLAB_SERIES_HPP_
#define RENLAB_SERIES_HPP_

#include <vector>

#include "renlab/fields.hpp"

namespace renlab {

// Truncated power series in the boundary defining function x.  Coefficients
// are scalar or symmetric-2-tensor fields on the boundary grid.  All
// arithmetic is coefficient-wise exact up to the truncation order.
struct PowerSeries {
  FieldKind kind = FieldKind::Scalar;
  BoundaryGrid grid;
  std::vector<Field> coeffs;  // c0 ... cN

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  static PowerSeries zero(const BoundaryGrid& g, int order,
                          FieldKind kind = FieldKind::Scalar);
  // Series with constant coefficients c[k].
  static PowerSeries constant(const BoundaryGrid& g, const std::vector<double>& c);

  const Field& coeff(int k) const { return coeffs.at(k); }
  Field& coeff(int k) { return coeffs.at(k); }

  // Evaluate at x by Horner; returns a field.
  Field eval(double x) const;
};

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_scale(const PowerSeries& a, double c);

// Truncated Cauchy product.  Result order: min of input orders, raised by the
// x-adic valuation of either factor (multiplying by x^m series shifts the
// reliable window).
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

// 1/a for scalar series with c0 bounded away from zero pointwise.
PowerSeries series_invert(const PowerSeries& a);

// a^q for scalar series, rational exponent, c0 > 0 pointwise (Miller's
// recurrence).
PowerSeries series_power(const PowerSeries& a, double q);

// outer(inner(x)) for scalar series; inner must have c0 = 0.
PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner);

}  // namespace renlab

#endif  // RENLAB_SERIES_HPP_
