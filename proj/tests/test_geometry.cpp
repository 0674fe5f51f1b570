#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include <exstokes/geometry.hpp>
#include <exstokes/quadrature.hpp>

using namespace exstokes;
using Eigen::Vector2d;

namespace {

// Adaptive Simpson, independent of the trapezoid rule under test.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  auto simpson = [](double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };
  const double whole = simpson(fa, fm, fb, b - a);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = simpson(fa, f(lm), fm, m - a);
  const double right = simpson(fm, f(rm), fb, b - m);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, 0.5 * tol, depth + 1);
}

// even-odd ray casting on the 4N polygon, independent of winding numbers
bool ray_cast_exterior(const BoundaryCurve& c, const Vector2d& x) {
  const int m = 4 * c.size();
  int hits = 0;
  Vector2d a = c.position(0.0);
  for (int k = 1; k <= m; ++k) {
    const Vector2d b = c.position(2.0 * M_PI * k / m);
    if ((a(1) > x(1)) != (b(1) > x(1))) {
      const double xi = a(0) + (x(1) - a(1)) / (b(1) - a(1)) * (b(0) - a(0));
      if (xi > x(0)) ++hits;
    }
    a = b;
  }
  return hits % 2 == 0;
}

// brute-force periodic integral of log|2 sin((sigma-t)/2)| g(t) by graded
// panels accumulating into the singularity from both sides
double log_kernel_integral(double sigma, const std::function<double(double)>& g) {
  double total = 0.0;
  for (double sgn : {-1.0, 1.0}) {
    double hi = M_PI;  // integrate over u = sgn*(t - sigma) in (0, pi]
    for (int p = 0; p < 45; ++p) {
      total += integrate_gl(
          [&](double u) {
            return std::log(2.0 * std::sin(0.5 * u)) * g(sigma + sgn * u);
          },
          hi * 0.5, hi, 16);
      hi *= 0.5;
    }
    // analytic tail of the sliver (0, hi]: kernel ~ log u there
    total += g(sigma) * hi * (std::log(hi) - 1.0);
  }
  return total;
}

}  // namespace

TEST_CASE("unit circle: nodes, normals, speeds, perimeter") {
  const auto c = circle_curve(64);
  for (int k = 0; k < c.size(); ++k) {
    CHECK(std::abs(c.node(k).norm() - 1.0) < 1e-14);
    CHECK((c.outward_normal(k) - c.node(k)).norm() < 1e-14);
    CHECK(std::abs(c.speed(k) - 1.0) < 1e-14);
    CHECK(std::abs(c.tangent(k).dot(c.outward_normal(k))) < 1e-14);
  }
  CHECK(std::abs(c.perimeter() - 2.0 * M_PI) < 1e-13);
  CHECK(std::abs(c.area() - M_PI) < 1e-13);
}

TEST_CASE("ellipse perimeter matches an adaptive-integration oracle") {
  const double a = 1.5, b = 0.7;
  const auto c = ellipse_curve(a, b, 128);
  const double oracle = adaptive_simpson(
      [a, b](double s) {
        return std::hypot(a * std::sin(s), b * std::cos(s));
      },
      0.0, 2.0 * M_PI, 1e-13);
  CHECK(std::abs(c.perimeter() - oracle) < 1e-10);
}

TEST_CASE("kite curve: simplicity, area vs shoelace, outward normals") {
  const auto c = kite_curve(128);  // construction runs the simplicity check
  // shoelace converges only at O(m^-2), so sample a fine polygon
  const int m = 1 << 17;
  double shoelace = 0.0;
  Vector2d prev = c.position(0.0);
  for (int k = 1; k <= m; ++k) {
    const Vector2d cur = c.position(2.0 * M_PI * k / m);
    shoelace += prev(0) * cur(1) - prev(1) * cur(0);
    prev = cur;
  }
  shoelace *= 0.5;
  CHECK(std::abs(std::abs(c.area()) - std::abs(shoelace)) < 1e-8);

  // normals point into the unbounded component
  for (int k = 0; k < c.size(); ++k) {
    CHECK(c.winding_about(c.node(k) + 0.01 * c.outward_normal(k)) == 0);
    CHECK(c.winding_about(c.node(k) - 0.01 * c.outward_normal(k)) != 0);
  }
}

TEST_CASE("closed-curve normal integral vanishes") {
  for (const auto& c :
       {circle_curve(64), ellipse_curve(1.5, 0.7, 96), kite_curve(128)}) {
    Vector2d total = Vector2d::Zero();
    for (int k = 0; k < c.size(); ++k)
      total += c.outward_normal(k) * c.speed(k);
    total *= 2.0 * M_PI / c.size();
    CHECK(total.norm() < 1e-12);
  }
}

TEST_CASE("convex curve about the origin: x . n > 0") {
  const auto c = ellipse_curve(1.5, 0.7, 64);
  for (int k = 0; k < c.size(); ++k)
    CHECK(c.node(k).dot(c.outward_normal(k)) > 0.0);
}

TEST_CASE("refinement stability of perimeter and area") {
  for (int n : {128, 256}) {
    const auto c1 = kite_curve(n), c2 = kite_curve(2 * n);
    CHECK(std::abs(c1.perimeter() - c2.perimeter()) < 1e-12);
    CHECK(std::abs(c1.area() - c2.area()) < 1e-12);
  }
}

TEST_CASE("constructor rejections") {
  CHECK_THROWS_AS(circle_curve(7), std::invalid_argument);
  CHECK_THROWS_AS(circle_curve(10, 0.0), std::invalid_argument);  // degenerate
  // figure-eight style curve self-intersects
  CHECK_THROWS_AS(make_curve({{1, 1.0}, {-2, 1.0}}, 64), std::invalid_argument);
}

TEST_CASE("point_in_exterior") {
  const auto c = circle_curve(64);
  CHECK(point_in_exterior(c, Vector2d(2.0, 0.0)));
  CHECK(!point_in_exterior(c, Vector2d(0.0, 0.0)));
  CHECK_THROWS_AS(point_in_exterior(c, c.node(3)), std::domain_error);

  const auto k = kite_curve(128);
  CHECK(!point_in_exterior(k, Vector2d(-0.6, 0.0)));
  // agreement with the even-odd ray-casting oracle on a grid
  for (double x = -2.0; x <= 2.0; x += 0.37)
    for (double y = -2.0; y <= 2.0; y += 0.41) {
      const Vector2d p(x, y);
      if (k.polygon_distance(p) < 1e-3) continue;
      CHECK(point_in_exterior(k, p) == ray_cast_exterior(k, p));
    }
}

TEST_CASE("log quadrature: constants integrate to zero") {
  const LogQuadrature q(64);
  for (int j = 0; j < q.size(); ++j)
    CHECK(std::abs(q.R_weights().row(j).sum()) < 1e-12);
  CHECK(std::abs(q.weights_at(0.37).sum()) < 1e-12);
}

TEST_CASE("log quadrature reproduces the eigenfunction identities") {
  const LogQuadrature q(64);
  for (int m : {1, 3}) {
    for (double sigma : {0.0, 0.37, 2.0 * M_PI * 11 / 64}) {
      const Eigen::VectorXd w = q.weights_at(sigma);
      double got = 0.0;
      for (int k = 0; k < q.size(); ++k)
        got += w(k) * std::cos(m * 2.0 * M_PI * k / q.size());
      CHECK(std::abs(got - (-M_PI / m * std::cos(m * sigma))) < 1e-12);
    }
  }
}

TEST_CASE("log quadrature is spectrally accurate on analytic data") {
  auto g = [](double t) { return std::exp(std::cos(t)); };
  const double sigma = 1.1;
  const double oracle = log_kernel_integral(sigma, g);
  for (int n : {32, 64}) {
    const LogQuadrature q(n);
    const Eigen::VectorXd w = q.weights_at(sigma);
    double got = 0.0;
    for (int k = 0; k < n; ++k) got += w(k) * g(2.0 * M_PI * k / n);
    CHECK(std::abs(got - oracle) < (n == 32 ? 1e-9 : 1e-12));
  }
}

TEST_CASE("smooth kernels reduce to the plain trapezoid rule") {
  // adding a zero log part leaves only trapezoid weights; integrating an
  // analytic periodic function this way is spectrally exact
  const int n = 64;
  const LogQuadrature q(n);
  double got = 0.0;
  for (int k = 0; k < n; ++k)
    got += q.trapezoid_weight() * std::exp(std::sin(2.0 * M_PI * k / n));
  const double oracle = adaptive_simpson(
      [](double t) { return std::exp(std::sin(t)); }, 0.0, 2.0 * M_PI, 1e-13);
  CHECK(std::abs(got - oracle) < 1e-12);
}
