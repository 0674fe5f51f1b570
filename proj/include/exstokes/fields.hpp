// Divergence-free data fields (compact bump / asymptotically constant) built
// as rotated gradients of stream functions, plus the whole-plane volume
// potential (lambda - Delta)^{-1} applied to their zero extensions.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"

namespace exstokes {

// C-infinity bump profile: B(t) = exp(1 - 1/(1 - t^2)) on (-1,1), 0 outside.
inline double bridge(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}
inline double bridge_prime(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double d = 1.0 - t * t;
  return bridge(t) * (-2.0 * t / (d * d));
}

// C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly increasing between.
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}
inline double smooth_step_prime(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  const double da = a / (u * u), db = -b / ((1.0 - u) * (1.0 - u));
  return (da * b - a * db) / ((a + b) * (a + b));
}

// f = rotated gradient of a stream function; divergence-free by construction
// and equal to f_infinity outside support_radius. The zero extension over the
// obstacle coincides with the defining formula because every field vanishes
// identically on a neighborhood of the obstacle.
class SolenoidalField {
 public:
  using Evaluator = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

  SolenoidalField(Evaluator f, Eigen::Vector2d f_inf, double support_radius,
                  Eigen::Vector2d compact_center, double compact_radius,
                  double feature_scale, double sup_norm,
                  std::vector<double> radial_breaks)
      : f_(std::move(f)),
        f_inf_(f_inf),
        support_radius_(support_radius),
        compact_center_(compact_center),
        compact_radius_(compact_radius),
        feature_scale_(feature_scale),
        sup_norm_(sup_norm),
        radial_breaks_(std::move(radial_breaks)) {}

  Eigen::Vector2d operator()(const Eigen::Vector2d& x) const { return f_(x); }
  const Eigen::Vector2d& f_infinity() const { return f_inf_; }
  // f == f_infinity for |x| >= support_radius (about the origin)
  double support_radius() const { return support_radius_; }
  // supp(f - f_infinity) is contained in the disc below
  const Eigen::Vector2d& compact_center() const { return compact_center_; }
  double compact_radius() const { return compact_radius_; }
  double feature_scale() const { return feature_scale_; }
  double sup_norm() const { return sup_norm_; }
  // radii about compact_center separating the piecewise-analytic regions of
  // the defining profile (quadrature panels must not straddle them)
  const std::vector<double>& radial_breaks() const { return radial_breaks_; }

  // g = f - f_infinity, the compactly supported part
  Eigen::Vector2d compact_part(const Eigen::Vector2d& x) const {
    return f_(x) - f_inf_;
  }

 private:
  Evaluator f_;
  Eigen::Vector2d f_inf_;
  double support_radius_;
  Eigen::Vector2d compact_center_;
  double compact_radius_;
  double feature_scale_;
  double sup_norm_;
  std::vector<double> radial_breaks_;
};

namespace detail {

// max over rho of |h| by dense sampling plus local ternary refinement
inline double radial_sup(const std::function<double(double)>& h, double lo,
                         double hi) {
  const int n = 4096;
  double best = 0.0, at = lo;
  for (int i = 0; i <= n; ++i) {
    const double r = lo + (hi - lo) * i / n;
    const double v = std::abs(h(r));
    if (v > best) {
      best = v;
      at = r;
    }
  }
  double a = std::max(lo, at - (hi - lo) / n), b = std::min(hi, at + (hi - lo) / n);
  for (int it = 0; it < 200; ++it) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (std::abs(h(m1)) < std::abs(h(m2)))
      a = m1;
    else
      b = m2;
  }
  return std::abs(h(0.5 * (a + b)));
}

inline void require_clear_of_curve(const BoundaryCurve& curve,
                                   const Eigen::Vector2d& center, double r0,
                                   double r1) {
  // the support annulus must sit in the fluid: the obstacle lies either
  // entirely inside the hole or entirely beyond the outer radius
  bool all_inside = true, all_outside = true;
  const int m = 4 * curve.size();
  for (int k = 0; k < m; ++k) {
    const double d =
        (curve.position(2.0 * std::numbers::pi * k / m) - center).norm();
    if (d >= 0.99 * r0) all_inside = false;
    if (d <= 1.01 * r1) all_outside = false;
  }
  if (all_inside) return;
  if (all_outside) {
    // annulus must additionally avoid the bounded component
    if (curve.winding_about(center + Eigen::Vector2d(0.5 * (r0 + r1), 0)) == 0)
      return;
  }
  throw std::invalid_argument("field support intersects the boundary");
}

}  // namespace detail

// f = rot-grad of A * bridge((rho - rm)/rh), supported in r0 <= |x-c| <= r1
inline SolenoidalField bump_field(const Eigen::Vector2d& center, double r0,
                                  double r1, double amplitude,
                                  const BoundaryCurve* curve = nullptr) {
  if (!(0.0 < r0 && r0 < r1))
    throw std::invalid_argument("bump_field: need 0 < r0 < r1");
  if (curve) detail::require_clear_of_curve(*curve, center, r0, r1);
  const double rm = 0.5 * (r0 + r1), rh = 0.5 * (r1 - r0);
  auto psi_prime = [amplitude, rm, rh](double rho) {
    return amplitude / rh * bridge_prime((rho - rm) / rh);
  };
  auto f = [center, psi_prime](const Eigen::Vector2d& x) {
    const Eigen::Vector2d d = x - center;
    const double rho = d.norm();
    if (rho < 1e-300) return Eigen::Vector2d(0, 0);
    const double c = psi_prime(rho) / rho;
    return Eigen::Vector2d(c * d(1), -c * d(0));
  };
  const double sup = detail::radial_sup(psi_prime, r0, r1);
  return SolenoidalField(f, Eigen::Vector2d::Zero(), center.norm() + r1,
                         center, r1, rh, sup, {r0, r1});
}

// f = rot-grad of chi(|x|) * (f1 x2 - f2 x1): zero for |x| <= r0, exactly
// f_inf beyond r1, divergence-free throughout
inline SolenoidalField asymptotically_constant_field(
    const Eigen::Vector2d& f_inf, const BoundaryCurve& curve, double r0,
    double r1) {
  if (!(0.0 < r0 && r0 < r1))
    throw std::invalid_argument("asymptotically_constant_field: radii order");
  for (int k = 0; k < 4 * curve.size(); ++k)
    if (curve.position(2.0 * std::numbers::pi * k / (4 * curve.size())).norm() >=
        0.99 * r0)
      throw std::invalid_argument(
          "asymptotically_constant_field: r0 does not enclose the obstacle");
  const double w = r1 - r0;
  auto f = [f_inf, r0, w](const Eigen::Vector2d& x) {
    const double rho = x.norm();
    const double u = (rho - r0) / w;
    const double chi = smooth_step(u);
    Eigen::Vector2d out = chi * f_inf;
    if (u > 0.0 && u < 1.0) {
      const double psi_inf = f_inf(0) * x(1) - f_inf(1) * x(0);
      const double c = psi_inf * smooth_step_prime(u) / (w * rho);
      out += c * Eigen::Vector2d(x(1), -x(0));
    }
    return out;
  };
  // sup over the transition annulus by sampling rays (field is not radial)
  double sup = f_inf.norm();
  for (int j = 0; j < 64; ++j) {
    const double th = 2.0 * std::numbers::pi * j / 64;
    const Eigen::Vector2d dir(std::cos(th), std::sin(th));
    sup = std::max(sup, detail::radial_sup(
                            [&](double rho) { return f(rho * dir).norm(); },
                            r0, r1));
  }
  return SolenoidalField(f, f_inf, r1, Eigen::Vector2d::Zero(), r1, w, sup,
                         {r0, r1});
}

// Resolution knobs for the volume potential quadrature.
struct PotentialParams {
  int angular_nodes = 512;     // trapezoid points in the angle
  int radial_points = 20;      // Gauss-Legendre points per radial panel
  int graded_panels = 22;      // halving panels into the kernel singularity
  double decay_cutoff = 40.0;  // integrate only where Re(sqrt(lambda)) r <= this

  // cheaper preset for bulk area quadratures (~1e-5 relative)
  static PotentialParams fast() {
    PotentialParams p;
    p.angular_nodes = 128;
    p.radial_points = 12;
    p.graded_panels = 16;
    return p;
  }
};

// (lambda - Delta)^{-1} of the zero extension of f: the constant part is
// f_infinity / lambda, the compact part is convolved with the scalar kernel
// in polar coordinates centered at the evaluation point (graded radial
// panels absorb the log singularity; the angle is spectrally accurate).
class VolumePotential {
 public:
  VolumePotential(SectorScalar lambda, SolenoidalField field,
                  PotentialParams params = {})
      : lambda_(lambda), field_(std::move(field)), p_(params) {}

  const SectorScalar& lambda() const { return lambda_; }
  const SolenoidalField& field() const { return field_; }

  Eigen::Vector2cd evaluate(const Eigen::Vector2d& x) const {
    Eigen::Vector2cd out = field_.f_infinity().cast<complexd>() / lambda_.lambda();
    const complexd sl = lambda_.sqrt_lambda();
    convolve(x, [&](double r, const Eigen::Vector2d& g, double w) {
      const complexd k0 =
          bessel_k0(RightHalfPlaneArg(sl * r)) * detail::inv_two_pi;
      out += (w * k0) * g.cast<complexd>();
    });
    return out;
  }

  // out(i, k) = partial_k of component i
  Eigen::Matrix2cd gradient(const Eigen::Vector2d& x) const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    const complexd sl = lambda_.sqrt_lambda();
    convolve_dir(x, [&](double r, const Eigen::Vector2d& omega,
                        const Eigen::Vector2d& g, double w) {
      // grad_x K0(sl |x-y|) at y = x + r omega is sl K1(sl r) omega
      const complexd c = w * sl * bessel_k1(RightHalfPlaneArg(sl * r)) *
                         detail::inv_two_pi;
      out += (c * g.cast<complexd>()) * omega.transpose();
    });
    return out;
  }

 private:
  // visit(r, g(x + r omega), weight r dr dtheta); skipped when the support
  // lies beyond the kernel decay horizon
  template <typename Visit>
  void convolve(const Eigen::Vector2d& x, Visit&& visit) const {
    convolve_dir(x, [&](double r, const Eigen::Vector2d&,
                        const Eigen::Vector2d& g, double w) { visit(r, g, w); });
  }

  template <typename Visit>
  void convolve_dir(const Eigen::Vector2d& x, Visit&& visit) const {
    const Eigen::Vector2d cx = field_.compact_center() - x;
    const double dc = cx.norm();
    const double horizon =
        p_.decay_cutoff / std::max(lambda_.sqrt_lambda().real(), 1e-300);
    if (dc - field_.compact_radius() > horizon) return;
    const double r_out = std::min(dc + field_.compact_radius(), horizon);
    const double h_u =
        std::max(std::min(field_.feature_scale(),
                          4.0 / std::max(lambda_.sqrt_lambda().real(), 1e-300)),
                 r_out / 64.0);

    const auto& gl = gauss_legendre(p_.radial_points);
    const double dir = std::atan2(cx(1), cx(0));
    // Angular rule. Rays tangent to a break circle are square-root-type
    // singular points of the angular integrand, so panel the angle there
    // (with halving panels toward each tangency); with no tangencies the
    // periodic trapezoid rule is spectrally accurate.
    std::vector<std::pair<double, double>> thetas;  // (theta, weight)
    {
      std::vector<double> crit;  // offsets from dir, in (-pi, pi)
      for (double rb : field_.radial_breaks())
        if (dc > rb) {
          const double t = std::asin(rb / dc);
          crit.push_back(-t);
          crit.push_back(t);
        }
      if (crit.empty()) {
        const int nt = p_.angular_nodes;
        for (int j = 0; j < nt; ++j)
          thetas.emplace_back(2.0 * std::numbers::pi * j / nt,
                              2.0 * std::numbers::pi / nt);
      } else {
        const double cone =
            (dc > field_.compact_radius())
                ? std::asin(std::min(1.0, field_.compact_radius() / dc)) + 1e-12
                : std::numbers::pi;
        std::vector<double> bounds{-cone, cone};
        for (double t : crit)
          if (t > -cone + 1e-13 && t < cone - 1e-13) bounds.push_back(t);
        std::sort(bounds.begin(), bounds.end());
        const int tg = 9;   // tangency-grading halvings
        const int tq = 12;  // GL points per theta panel
        const auto& glt = gauss_legendre(tq);
        const double wmax =
            2.0 * std::numbers::pi * tq / std::max(64, p_.angular_nodes);
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
          const double a = bounds[i], b = bounds[i + 1], len = b - a;
          if (len < 1e-13) continue;
          const int parts = std::max(1, static_cast<int>(std::ceil(len / wmax)));
          const double h = len / parts;
          std::vector<double> sub;
          sub.push_back(a);
          for (int k = tg; k >= 1; --k) sub.push_back(a + h * std::pow(0.5, k));
          for (int q = 1; q < parts; ++q) sub.push_back(a + h * q);
          for (int k = 1; k <= tg; ++k) sub.push_back(b - h * std::pow(0.5, k));
          sub.push_back(b);
          for (size_t s = 0; s + 1 < sub.size(); ++s) {
            const double mid = dir + 0.5 * (sub[s] + sub[s + 1]);
            const double half = 0.5 * (sub[s + 1] - sub[s]);
            for (int q = 0; q < static_cast<int>(glt.nodes.size()); ++q)
              thetas.emplace_back(mid + half * glt.nodes[q],
                                  half * glt.weights[q]);
          }
        }
      }
    }
    std::vector<double> edges;
    for (const auto& [theta, wt] : thetas) {
      const Eigen::Vector2d omega(std::cos(theta), std::sin(theta));
      // panel edges on this ray: the log point r = 0 (graded), the crossings
      // of the field's break circles (the profile is analytic in between),
      // and uniform subdivision at the h_u scale
      edges.clear();
      edges.push_back(0.0);
      edges.push_back(r_out);
      const double proj = omega.dot(cx);
      for (double rb : field_.radial_breaks()) {
        const double disc = proj * proj - (dc * dc - rb * rb);
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        for (double root : {proj - sq, proj + sq})
          if (root > 1e-14 && root < r_out * (1.0 - 1e-14))
            edges.push_back(root);
      }
      std::sort(edges.begin(), edges.end());
      // Subdivide each inter-break interval with halving panels toward both
      // endpoints (the profile is analytic inside but flat-singular at the
      // breaks) and uniform panels of size <= h_u in the middle.
      std::vector<double> full;
      full.push_back(0.0);
      const int bg = 7;  // break-grading halvings
      for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1], len = b - a;
        const int parts =
            std::max(1, static_cast<int>(std::ceil(len / h_u)));
        const double h = len / parts;
        for (int k = bg; k >= 1; --k)
          full.push_back(a + h * std::pow(0.5, k));
        for (int q = 1; q < parts; ++q) full.push_back(a + h * q);
        for (int k = 1; k <= bg; ++k)
          full.push_back(b - h * std::pow(0.5, k));
        full.push_back(b);
      }
      // extra halving panels into the kernel's log point r = 0
      {
        double e = full[1];
        std::vector<double> graded;
        for (int k = 0; k < p_.graded_panels; ++k) {
          e *= 0.5;
          graded.push_back(e);
        }
        full.insert(full.begin() + 1, graded.rbegin(), graded.rend());
      }

      for (size_t pnl = 0; pnl + 1 < full.size(); ++pnl) {
        const double mid = 0.5 * (full[pnl] + full[pnl + 1]);
        const double half = 0.5 * (full[pnl + 1] - full[pnl]);
        for (int q = 0; q < p_.radial_points; ++q) {
          const double r = mid + half * gl.nodes[q];
          const Eigen::Vector2d g = field_.compact_part(x + r * omega);
          if (g.squaredNorm() == 0.0) continue;
          visit(r, omega, g, half * gl.weights[q] * r * wt);
        }
      }
    }
  }

  SectorScalar lambda_;
  SolenoidalField field_;
  PotentialParams p_;
};

inline Eigen::Vector2cd volume_potential(const SectorScalar& lambda,
                                         const SolenoidalField& field,
                                         const Eigen::Vector2d& x,
                                         PotentialParams params = {}) {
  return VolumePotential(lambda, field, params).evaluate(x);
}

}  // namespace exstokes
