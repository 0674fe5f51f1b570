#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <exstokes/semigroup.hpp>

using namespace exstokes;
using cd = std::complex<double>;
using Eigen::Vector2d;

namespace {
constexpr double kTheta = 0.25 * M_PI;

double scalar_error(cd t, int m) {
  // closed-form Laplace inversion oracle: (lambda + 1)^{-1} -> e^{-t}
  const auto c = build_contour(t, kTheta, m);
  const cd got = apply_contour(c, [](cd lam) { return 1.0 / (lam + 1.0); });
  return std::abs(got - std::exp(-t));
}
}  // namespace

TEST_CASE("contour quadrature reproduces scalar Laplace inversions") {
  CHECK(scalar_error(cd(1.0, 0.0), 32) < 1e-10);
  // Heaviside: residue of 1/lambda at the enclosed origin pins the
  // orientation convention
  const auto c = build_contour(cd(1.0, 0.0), kTheta, 32);
  const cd heav = apply_contour(c, [](cd lam) { return 1.0 / lam; });
  CHECK(std::abs(heav - 1.0) < 1e-10);
  // root-exponential convergence: doubling M gains at least 1e3
  CHECK(scalar_error(cd(1.0, 0.0), 64) < 1e-3 * scalar_error(cd(1.0, 0.0), 32));
  // across the admissible time range and into the time sector
  CHECK(scalar_error(cd(0.01, 0.0), 32) < 1e-8);
  CHECK(scalar_error(cd(1000.0, 0.0), 32) < 1e-8);
  CHECK(scalar_error(std::polar(1.0, 0.3), 32) < 1e-8);
}

TEST_CASE("contour invariants: pairing, sector, floor, rejections") {
  const auto c = build_contour(cd(2.0, 0.0), kTheta, 48);
  const int m = static_cast<int>(c.nodes.size());
  CHECK(m == 48);
  for (int k = 0; k < m; ++k) {
    const cd lam = c.nodes[k].lambda;
    CHECK(std::abs(lam) >= 1e-8);
    CHECK(std::abs(std::arg(lam)) < kTheta + 0.5 * M_PI);
    // conjugate-symmetric node layout
    CHECK(std::abs(lam - std::conj(c.nodes[m - 1 - k].lambda)) <
          1e-13 * std::abs(lam));
    CHECK(std::abs(c.nodes[k].weight -
                   std::conj(c.nodes[m - 1 - k].weight)) <
          1e-13 * std::abs(c.nodes[k].weight) + 1e-300);
  }
  CHECK_THROWS_AS(build_contour(cd(0.0, 0.0), kTheta, 32), std::domain_error);
  CHECK_THROWS_AS(build_contour(cd(2e3, 0.0), kTheta, 32), std::domain_error);
  CHECK_THROWS_AS(build_contour(cd(1.0, 0.0), kTheta, 8),
                  std::invalid_argument);
  // arg t too close to the sector boundary
  CHECK_THROWS_AS(build_contour(std::polar(1.0, 0.78), kTheta, 32),
                  std::domain_error);
}

TEST_CASE("short-time consistency deep inside the data support") {
  const auto curve = circle_curve(48);
  const Vector2d center(2.5, 0.5);
  const auto f = bump_field(center, 0.4, 1.4, 1.3, &curve);
  const Vector2d x = center + Vector2d(0.9, 0.0);
  SemigroupEvaluator ev(curve, f);
  const auto res = ev.apply(cd(1e-3, 0.0), {x}, 24);
  const Eigen::Vector2d fx = f(x);
  CHECK((res.values[0] - fx.cast<cd>()).norm() < 0.05 * f.sup_norm());
}

TEST_CASE("real data gives real values, with a small refinement gap") {
  const auto curve = circle_curve(48);
  const auto f = bump_field(Vector2d(2.5, 0.5), 0.4, 1.4, 1.3, &curve);
  SemigroupEvaluator ev(curve, f);
  const std::vector<Vector2d> pts{Vector2d(2.0, -0.5), Vector2d(-1.8, 0.3)};
  const auto res = ev.apply(cd(1.0, 0.0), pts, 24);
  for (const auto& v : res.values) {
    CHECK(std::abs(v(0).imag()) < 1e-8 * f.sup_norm());
    CHECK(std::abs(v(1).imag()) < 1e-8 * f.sup_norm());
    CHECK(v.norm() < 10.0 * f.sup_norm());
  }
  // two contour families approximate the same analytic function
  CHECK(res.refinement_gap < 1e-5 * f.sup_norm());
}

TEST_CASE("local decay of the evolved field over time") {
  const auto curve = circle_curve(48);
  const auto f = bump_field(Vector2d(2.5, 0.5), 0.4, 1.4, 1.3, &curve);
  SemigroupEvaluator ev(curve, f);
  const std::vector<Vector2d> pts{Vector2d(2.0, 0.5), Vector2d(2.9, 0.1)};
  auto window_sup = [&](double t) {
    const auto res = ev.apply(cd(t, 0.0), pts, 24);
    double s = 0.0;
    for (const auto& v : res.values) s = std::max(s, v.norm());
    return s;
  };
  const double s1 = window_sup(1.0);
  const double s10 = window_sup(10.0);
  const double s100 = window_sup(100.0);
  CHECK(s10 < s1);
  CHECK(s100 < s10);
  CHECK(s100 < 0.2 * s1);
}
