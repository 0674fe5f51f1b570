// Gauss-Legendre rules and small quadrature helpers.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace exstokes {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > 512)
    throw std::invalid_argument("gauss_legendre: order out of range");
  static thread_local std::vector<QuadratureRule> cache(513);
  QuadratureRule& r = cache[n];
  if (!r.nodes.empty()) return r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Integrate f over [a, b] with an npts-point Gauss-Legendre rule.
template <typename F>
auto integrate_gl(F&& f, double a, double b, int npts) {
  const auto& r = gauss_legendre(npts);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto sum = f(mid + half * r.nodes[0]) * (half * r.weights[0]);
  for (int i = 1; i < npts; ++i)
    sum += f(mid + half * r.nodes[i]) * (half * r.weights[i]);
  return sum;
}

// Composite rule over geometrically graded panels accumulating toward a;
// handles endpoint singularities of log / algebraic type.
template <typename F>
auto integrate_gl_graded(F&& f, double a, double b, int panels, int npts) {
  if (panels < 2) throw std::invalid_argument("integrate_gl_graded: panels");
  const double ratio = 0.5;
  double hi = b;
  auto sum = f(0.5 * (a + b)) * 0.0;  // zero of the right result type
  for (int p = 0; p < panels; ++p) {
    const double lo =
        (p + 1 == panels) ? a : a + (hi - a) * ratio;
    sum += integrate_gl(f, lo, hi, npts);
    hi = lo;
  }
  return sum;
}

}  // namespace exstokes
