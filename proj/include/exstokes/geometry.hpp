// Obstacle boundary as a finite Fourier curve: nodes, tangents, outward
// normals, speeds, exterior-point tests, and the product quadrature that
// handles log-singular boundary kernels with spectral accuracy.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace exstokes {

using complexd = std::complex<double>;

// 2pi-periodic map s -> x(s) given by z(s) = sum_m c_m e^{i m s}, sampled at
// N equispaced nodes. Immutable after construction.
class BoundaryCurve {
 public:
  using ModeList = std::vector<std::pair<int, complexd>>;

  BoundaryCurve(ModeList modes, int n) : modes_(std::move(modes)), n_(n) {
    if (n_ < 8 || n_ % 2 != 0)
      throw std::invalid_argument("BoundaryCurve: N must be even and >= 8");
    nodes_.resize(n_);
    tangents_.resize(n_);
    normals_.resize(n_);
    speeds_.resize(n_);
    const bool ccw = winding_about(interior_seed()) > 0;
    for (int k = 0; k < n_; ++k) {
      const double s = 2.0 * std::numbers::pi * k / n_;
      nodes_[k] = position(s);
      const complexd dz = derivative_z(s);
      const double sp = std::abs(dz);
      if (sp < 1e-10)
        throw std::invalid_argument("BoundaryCurve: irregular parametrization");
      speeds_[k] = sp;
      tangents_[k] = Eigen::Vector2d(dz.real(), dz.imag()) / sp;
      // for a counterclockwise curve the outward normal is -i z'/|z'|
      const complexd nz = (ccw ? -1.0 : 1.0) * complexd(0, 1) * dz / sp;
      normals_[k] = Eigen::Vector2d(nz.real(), nz.imag());
    }
    check_simple();
  }

  int size() const { return n_; }
  double node_parameter(int k) const { return 2.0 * std::numbers::pi * k / n_; }
  const Eigen::Vector2d& node(int k) const { return nodes_[k]; }
  const Eigen::Vector2d& tangent(int k) const { return tangents_[k]; }
  const Eigen::Vector2d& outward_normal(int k) const { return normals_[k]; }
  double speed(int k) const { return speeds_[k]; }
  const ModeList& modes() const { return modes_; }

  Eigen::Vector2d position(double s) const {
    const complexd z = eval(s, 0);
    return {z.real(), z.imag()};
  }
  Eigen::Vector2d velocity(double s) const {  // x'(s), analytic
    const complexd z = derivative_z(s);
    return {z.real(), z.imag()};
  }
  Eigen::Vector2d acceleration(double s) const {
    const complexd z = eval(s, 2);
    return {z.real(), z.imag()};
  }
  double speed_at(double s) const { return std::abs(derivative_z(s)); }

  double perimeter() const {
    double p = 0.0;
    for (int k = 0; k < n_; ++k) p += speeds_[k];
    return p * 2.0 * std::numbers::pi / n_;
  }

  // signed area by Green's theorem, (1/2) closed-int (x1 dx2 - x2 dx1)
  double area() const {
    double a = 0.0;
    for (int k = 0; k < n_; ++k) {
      const Eigen::Vector2d v = velocity(node_parameter(k));
      a += nodes_[k](0) * v(1) - nodes_[k](1) * v(0);
    }
    return 0.5 * a * 2.0 * std::numbers::pi / n_;
  }

  // a point strictly inside the bounded component (node centroid)
  Eigen::Vector2d interior_seed() const {
    complexd c = 0.0;
    for (const auto& [m, cm] : modes_)
      if (m == 0) c = cm;
    return {c.real(), c.imag()};
  }

  // winding number of the curve about x, by angle summation on a fine polygon
  int winding_about(const Eigen::Vector2d& x) const {
    const int m = 4 * n_;
    double total = 0.0;
    double prev = arg_at(0.0, x);
    for (int k = 1; k <= m; ++k) {
      const double cur = arg_at(2.0 * std::numbers::pi * k / m, x);
      double d = cur - prev;
      while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      total += d;
      prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  }

  // distance from x to the 4N-gon through curve samples
  double polygon_distance(const Eigen::Vector2d& x) const {
    const int m = 4 * n_;
    double best = 1e300;
    Eigen::Vector2d a = position(0.0);
    for (int k = 1; k <= m; ++k) {
      const Eigen::Vector2d b = position(2.0 * std::numbers::pi * k / m);
      const Eigen::Vector2d ab = b - a;
      const double t =
          std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (x - a - t * ab).norm());
      a = b;
    }
    return best;
  }

 private:
  complexd eval(double s, int deriv) const {
    complexd z = 0.0;
    for (const auto& [m, c] : modes_) {
      complexd f = c;
      for (int d = 0; d < deriv; ++d) f *= complexd(0, m);
      z += f * std::exp(complexd(0, m * s));
    }
    return z;
  }
  complexd derivative_z(double s) const { return eval(s, 1); }

  double arg_at(double s, const Eigen::Vector2d& x) const {
    const Eigen::Vector2d d = position(s) - x;
    return std::atan2(d(1), d(0));
  }

  void check_simple() const {
    const int m = 4 * n_;
    std::vector<Eigen::Vector2d> p(m);
    for (int k = 0; k < m; ++k)
      p[k] = position(2.0 * std::numbers::pi * k / m);
    auto crosses = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                      const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
      auto orient = [](const Eigen::Vector2d& u, const Eigen::Vector2d& v,
                       const Eigen::Vector2d& w) {
        return (v(0) - u(0)) * (w(1) - u(1)) - (v(1) - u(1)) * (w(0) - u(0));
      };
      return orient(a, b, c) * orient(a, b, d) < 0.0 &&
             orient(c, d, a) * orient(c, d, b) < 0.0;
    };
    for (int i = 0; i < m; ++i) {
      for (int j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;  // adjacent around the seam
        if (crosses(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]))
          throw std::invalid_argument("BoundaryCurve: self-intersecting");
      }
    }
  }

  ModeList modes_;
  int n_;
  std::vector<Eigen::Vector2d> nodes_, tangents_, normals_;
  std::vector<double> speeds_;
};

inline BoundaryCurve make_curve(BoundaryCurve::ModeList modes, int n) {
  return BoundaryCurve(std::move(modes), n);
}

inline BoundaryCurve circle_curve(int n, double radius = 1.0,
                                  const Eigen::Vector2d& center = {0, 0}) {
  return make_curve({{0, complexd(center(0), center(1))}, {1, radius}}, n);
}

inline BoundaryCurve ellipse_curve(double a, double b, int n) {
  return make_curve({{1, 0.5 * (a + b)}, {-1, 0.5 * (a - b)}}, n);
}

inline BoundaryCurve kite_curve(int n) {
  return make_curve({{-2, 0.325}, {-1, -0.25}, {0, -0.65}, {1, 1.25},
                     {2, 0.325}},
                    n);
}

// true iff x lies in the unbounded (exterior) component
inline bool point_in_exterior(const BoundaryCurve& curve,
                              const Eigen::Vector2d& x) {
  if (curve.polygon_distance(x) < 1e-9)
    throw std::domain_error("point_in_exterior: point too close to boundary");
  return curve.winding_about(x) == 0;
}

// Product quadrature for kernels of the form
//   K(s,t) = K1(s,t) log|2 sin((s-t)/2)| + K2(s,t)
// on the periodic grid t_k = 2 pi k / N: the log factor gets the singular
// weights below, the smooth remainder the plain trapezoid weight 2 pi / N.
class LogQuadrature {
 public:
  explicit LogQuadrature(int n) : n_(n) {
    if (n_ < 8 || n_ % 2 != 0)
      throw std::invalid_argument("LogQuadrature: N must be even and >= 8");
    r_ = Eigen::MatrixXd(n_, n_);
    for (int j = 0; j < n_; ++j)
      r_.row(j) = weights_at(2.0 * std::numbers::pi * j / n_).transpose();
  }

  int size() const { return n_; }
  double trapezoid_weight() const { return 2.0 * std::numbers::pi / n_; }
  const Eigen::MatrixXd& R_weights() const { return r_; }

  // weights w_k(sigma) with sum_k w_k(sigma) g(t_k) ~= the periodic integral
  // of log|2 sin((sigma-t)/2)| g(t); exact for trigonometric g of degree < N/2
  Eigen::VectorXd weights_at(double sigma) const {
    const int half = n_ / 2;
    Eigen::VectorXd w(n_);
    for (int k = 0; k < n_; ++k) {
      const double d = sigma - 2.0 * std::numbers::pi * k / n_;
      double sum = 0.0;
      for (int m = 1; m < half; ++m) sum += std::cos(m * d) / m;
      sum += 0.5 * std::cos(half * d) / half;
      w(k) = -2.0 * std::numbers::pi / n_ * sum;
    }
    return w;
  }

 private:
  int n_;
  Eigen::MatrixXd r_;
};

inline LogQuadrature log_quadrature(const BoundaryCurve& curve) {
  return LogQuadrature(curve.size());
}

}  // namespace exstokes
