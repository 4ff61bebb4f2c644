#ifndef RENLAB_SPLINE_HPP_
#define RENLAB_SPLINE_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

namespace renlab {

// Cubic spline on a uniform grid with not-a-knot ends.  The evaluation
// argument is in node units (position = t * h from the first node).
struct USpline {
  double h = 1.0;
  std::vector<double> y, m;

  void build(const std::vector<double>& vals, double spacing) {
    y = vals;
    h = spacing;
    const int n = static_cast<int>(y.size());
    m.assign(n, 0.0);
    if (n < 4) return;
    std::vector<double> al(n, 0.0), bd(n, 0.0), cu(n, 0.0), rhs(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
      al[i] = h / 6.0;
      bd[i] = 2.0 * h / 3.0;
      cu[i] = h / 6.0;
      rhs[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h;
    }
    // not-a-knot: m0 = 2 m1 - m2, m_{n-1} = 2 m_{n-2} - m_{n-3}
    bd[1] += al[1] * 2.0;
    cu[1] -= al[1];
    al[1] = 0.0;
    bd[n - 2] += cu[n - 2] * 2.0;
    al[n - 2] -= cu[n - 2];
    cu[n - 2] = 0.0;
    for (int i = 2; i < n - 1; ++i) {
      double w = al[i] / bd[i - 1];
      bd[i] -= w * cu[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[n - 2] = rhs[n - 2] / bd[n - 2];
    for (int i = n - 3; i >= 1; --i) m[i] = (rhs[i] - cu[i] * m[i + 1]) / bd[i];
    m[0] = 2.0 * m[1] - m[2];
    m[n - 1] = 2.0 * m[n - 2] - m[n - 3];
  }

  double eval(double t) const {
    const int n = static_cast<int>(y.size());
    int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
    double A = (i + 1) - t, B = t - i;
    return A * y[i] + B * y[i + 1] +
           ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
  }
  double deriv(double t) const {
    const int n = static_cast<int>(y.size());
    int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
    double A = (i + 1) - t, B = t - i;
    return (y[i + 1] - y[i]) / h +
           (-(3.0 * A * A - 1.0) * m[i] + (3.0 * B * B - 1.0) * m[i + 1]) * h / 6.0;
  }
};

// Composite Gauss-Legendre(4) integration of fn over [a, b] with n panels.
template <typename Fn>
double integrate_gl4(Fn&& fn, double a, double b, int panels) {
  static const double xg[2] = {0.3399810435848563, 0.8611363115940526};
  static const double wg[2] = {0.6521451548625461, 0.3478548451374538};
  double acc = 0.0;
  const double dh = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * dh;
    for (int k = 0; k < 2; ++k) {
      acc += wg[k] * fn(mid + 0.5 * dh * xg[k]);
      acc += wg[k] * fn(mid - 0.5 * dh * xg[k]);
    }
  }
  return acc * 0.5 * dh;
}

}  // namespace renlab

#endif  // RENLAB_SPLINE_HPP_
