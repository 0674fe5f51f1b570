// Explicit kernels of the 2D exterior Stokes resolvent problem: the scalar
// resolvent kernel E^lambda, the resolvent Stokes tensor V^lambda built from
// e1/e2, its log/regular split, the pressure kernel and the steady Stokeslet,
// plus analytically differentiated variants for gradient evaluation.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "bessel.hpp"

namespace exstokes {

using complexd = std::complex<double>;

// Limit of e1(kappa) + (1/2) log kappa as kappa -> 0:
// log(2)/2 - gamma/2 - 1/4.
inline const double e1_log_limit =
    0.5 * std::numbers::ln2 - 0.5 * euler_gamma - 0.25;

// Resolvent parameter lambda in the sector |arg lambda| < theta + pi/2,
// with its principal square root (Re sqrt > 0) cached.
class SectorScalar {
 public:
  SectorScalar(complexd lambda, double theta) : lambda_(lambda), theta_(theta) {
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2))
      throw std::domain_error("SectorScalar: theta must lie in (0, pi/2)");
    if (lambda == complexd(0.0, 0.0) || !std::isfinite(std::abs(lambda)))
      throw std::domain_error("SectorScalar: lambda must be finite, nonzero");
    if (std::abs(std::arg(lambda)) >= theta + std::numbers::pi / 2)
      throw std::domain_error("SectorScalar: lambda outside the sector");
    sqrt_lambda_ = std::sqrt(lambda);
  }
  complexd lambda() const { return lambda_; }
  complexd sqrt_lambda() const { return sqrt_lambda_; }
  double theta() const { return theta_; }

 private:
  complexd lambda_;
  double theta_;
  complexd sqrt_lambda_;
};

namespace detail {

// Power series in u = kappa^2/4 for the cancellation-free small-kappa path.
//   e1(kappa) = log(kappa/2) A(u) + B(u)
//   e2(kappa) = log(kappa/2) G(u) + H(u)
// derived by substituting the K0/K1 ascending series into the e1/e2 formulas
// and cancelling the kappa^{-2} terms exactly.
struct E12Coeffs {
  static constexpr int order = 12;
  double a[order], b[order], g[order], h[order];
  E12Coeffs() {
    double fact = 1.0;       // k!
    double fact1 = 1.0;      // (k+1)!
    double hk = 0.0, hk1 = 1.0;
    for (int k = 0; k < order; ++k) {
      if (k > 0) {
        fact *= k;
        fact1 *= (k + 1);
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
      }
      const double inv_kk = 1.0 / (fact * fact);
      const double inv_k1 = 1.0 / (fact * fact1);
      const double dk = (-2.0 * euler_gamma + hk + hk1) * inv_k1;
      a[k] = 0.5 * inv_k1 - inv_kk;
      b[k] = (-euler_gamma + hk) * inv_kk - 0.25 * dk;
      g[k] = (k > 0) ? inv_kk - inv_k1 : 0.0;
      h[k] = euler_gamma * inv_kk - hk * inv_kk + 0.5 * dk;
    }
  }
};

inline const E12Coeffs& e12_coeffs() {
  static const E12Coeffs c;
  return c;
}

inline constexpr double e12_series_radius = 1e-2;

struct E12Values {
  complexd e1;
  complexd e1reg;  // e1 + (1/2) log kappa
  complexd e2;
  complexd de1;     // e1'(kappa)
  complexd de1reg;  // d/dkappa of e1reg
  complexd de2;
};

inline E12Values e12_series(complexd kappa) {
  const auto& c = e12_coeffs();
  const complexd u = kappa * kappa / 4.0;
  complexd A = 0, B = 0, G = 0, H = 0;   // series values
  complexd dA = 0, dB = 0, dG = 0, dH = 0;  // d/du
  complexd Ak = 0;  // sum_{k>=1} a_k u^{k-1}, for (A + 1/2)/kappa
  complexd Gk = 0;  // sum_{k>=1} g_k u^{k-1}
  complexd up = 1.0;   // u^k
  complexd upm = 0.0;  // u^{k-1}
  for (int k = 0; k < E12Coeffs::order; ++k) {
    A += c.a[k] * up;
    B += c.b[k] * up;
    G += c.g[k] * up;
    H += c.h[k] * up;
    if (k >= 1) {
      Ak += c.a[k] * upm;
      Gk += c.g[k] * upm;
      dA += static_cast<double>(k) * c.a[k] * upm;
      dB += static_cast<double>(k) * c.b[k] * upm;
      dG += static_cast<double>(k) * c.g[k] * upm;
      dH += static_cast<double>(k) * c.h[k] * upm;
    }
    upm = (k == 0) ? complexd(1.0) : upm * u;
    up *= u;
  }
  const complexd logk = std::log(kappa);
  const complexd logk2 = logk - std::numbers::ln2;
  E12Values v;
  v.e1reg = logk * (A + 0.5) - std::numbers::ln2 * A + B;
  v.e2 = logk2 * G + H;
  // d/dkappa, using du/dkappa = kappa/2 and u^k/kappa = (kappa/4) u^{k-1}
  v.de1reg = dA * (kappa / 2.0) * logk + (kappa / 4.0) * Ak -
             std::numbers::ln2 * dA * (kappa / 2.0) + dB * (kappa / 2.0);
  v.de2 = (kappa / 4.0) * Gk + logk2 * dG * (kappa / 2.0) +
          dH * (kappa / 2.0);
  // Benign subtraction here: |e1| >= 2 throughout the series regime.
  v.e1 = v.e1reg - 0.5 * logk;
  v.de1 = v.de1reg - 0.5 / kappa;
  return v;
}

inline E12Values e12_direct(complexd kappa) {
  auto [k0, k1] = bessel_k01(RightHalfPlaneArg(kappa));
  const complexd ik = 1.0 / kappa;
  const complexd ik2 = ik * ik;
  const complexd ik3 = ik2 * ik;
  E12Values v;
  v.e1 = k0 + ik * k1 - ik2;
  v.e1reg = v.e1 + 0.5 * std::log(kappa);
  v.e2 = -k0 - 2.0 * ik * k1 + 2.0 * ik2;
  v.de1 = -k1 - ik * k0 - 2.0 * ik2 * k1 + 2.0 * ik3;
  v.de1reg = v.de1 + 0.5 * ik;
  v.de2 = k1 + 2.0 * ik * k0 + 4.0 * ik2 * k1 - 4.0 * ik3;
  return v;
}

inline E12Values e12(complexd kappa) {
  if (std::abs(kappa) <= e12_series_radius) return e12_series(kappa);
  return e12_direct(kappa);
}

}  // namespace detail

inline complexd e1(RightHalfPlaneArg kappa) {
  return detail::e12(kappa.value()).e1;
}

inline complexd e2(RightHalfPlaneArg kappa) {
  return detail::e12(kappa.value()).e2;
}

// e1(kappa) + (1/2) log kappa, finite as kappa -> 0 (limit e1_log_limit).
inline complexd e1_regularized(RightHalfPlaneArg kappa) {
  return detail::e12(kappa.value()).e1reg;
}

inline complexd e1_prime(RightHalfPlaneArg kappa) {
  return detail::e12(kappa.value()).de1;
}

inline complexd e2_prime(RightHalfPlaneArg kappa) {
  return detail::e12(kappa.value()).de2;
}

namespace detail {
inline void require_nonzero(const Eigen::Vector2d& x) {
  if (x.squaredNorm() == 0.0)
    throw std::domain_error("kernel evaluated at the singular point x = 0");
}
inline constexpr double inv_two_pi = 0.15915494309189533576888376337251;
inline constexpr double inv_four_pi = 0.07957747154594766788444188168626;
}  // namespace detail

// E^lambda(x) = (1/2pi) K0(sqrt(lambda) |x|), kernel of (lambda - Delta)^{-1}.
inline complexd scalar_resolvent_kernel(const SectorScalar& lambda,
                                        const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const complexd kappa = lambda.sqrt_lambda() * x.norm();
  return detail::inv_two_pi * bessel_k0(RightHalfPlaneArg(kappa));
}

// grad_x E^lambda(x) = -(1/2pi) sqrt(lambda) K1(kappa) x/|x|
inline Eigen::Vector2cd scalar_resolvent_kernel_gradient(
    const SectorScalar& lambda, const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r = x.norm();
  const complexd kappa = lambda.sqrt_lambda() * r;
  const complexd c =
      -detail::inv_two_pi * lambda.sqrt_lambda() *
      bessel_k1(RightHalfPlaneArg(kappa)) / r;
  return {c * x(0), c * x(1)};
}

// V^lambda_{ij}(x) = (1/2pi)(delta_{ij} e1(kappa) + x_i x_j/|x|^2 e2(kappa))
inline Eigen::Matrix2cd resolvent_stokes_tensor(const SectorScalar& lambda,
                                                const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r = x.norm();
  const complexd kappa = lambda.sqrt_lambda() * r;
  const auto v = detail::e12(kappa);
  const complexd v1 = v.e1;
  const Eigen::Vector2d xh = x / r;
  Eigen::Matrix2cd out;
  out(0, 0) = detail::inv_two_pi * (v1 + xh(0) * xh(0) * v.e2);
  out(1, 1) = detail::inv_two_pi * (v1 + xh(1) * xh(1) * v.e2);
  out(0, 1) = detail::inv_two_pi * (xh(0) * xh(1) * v.e2);
  out(1, 0) = out(0, 1);
  return out;
}

// The bounded remainder of the split: Vtilde^lambda(x) such that
// V^lambda(x) = -(1/4pi)(log sqrt(lambda) + log |x|) I + Vtilde^lambda(x).
// Well defined for every x != 0 (bounded only in the regime kappa <= d).
inline Eigen::Matrix2cd resolvent_stokes_tensor_regular(
    const SectorScalar& lambda, const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r = x.norm();
  const complexd kappa = lambda.sqrt_lambda() * r;
  const auto v = detail::e12(kappa);
  const Eigen::Vector2d xh = x / r;
  Eigen::Matrix2cd out;
  out(0, 0) = detail::inv_two_pi * (v.e1reg + xh(0) * xh(0) * v.e2);
  out(1, 1) = detail::inv_two_pi * (v.e1reg + xh(1) * xh(1) * v.e2);
  out(0, 1) = detail::inv_two_pi * (xh(0) * xh(1) * v.e2);
  out(1, 0) = out(0, 1);
  return out;
}

// The three pieces of the log/regular split.
struct KernelSplit {
  complexd log_coeff;              // -(1/4pi) log sqrt(lambda), times I
  double log_x_coeff;              // -(1/4pi) log |x|, times I
  Eigen::Matrix2cd regular_tensor; // Vtilde^lambda(x)
};

inline KernelSplit kernel_split(const SectorScalar& lambda,
                                const Eigen::Vector2d& x, double d) {
  detail::require_nonzero(x);
  const double r = x.norm();
  if (std::abs(lambda.sqrt_lambda()) * r > d)
    throw std::domain_error(
        "kernel_split: |sqrt(lambda)| |x| > d, outside the split regime");
  KernelSplit s;
  s.log_coeff = -detail::inv_four_pi * std::log(lambda.sqrt_lambda());
  s.log_x_coeff = -detail::inv_four_pi * std::log(r);
  s.regular_tensor = resolvent_stokes_tensor_regular(lambda, x);
  return s;
}

// d/dx_k V^lambda_{ij}(x); result[k](i,j) = partial_k V_{ij}.
inline std::array<Eigen::Matrix2cd, 2> resolvent_stokes_tensor_gradient(
    const SectorScalar& lambda, const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r = x.norm();
  const complexd sl = lambda.sqrt_lambda();
  const complexd kappa = sl * r;
  const auto v = detail::e12(kappa);
  const complexd de1 = v.de1;
  const Eigen::Vector2d xh = x / r;
  std::array<Eigen::Matrix2cd, 2> out;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double dij = (i == j) ? 1.0 : 0.0;
        const double dik = (i == k) ? 1.0 : 0.0;
        const double djk = (j == k) ? 1.0 : 0.0;
        // d/dx_k (x_i x_j / r^2)
        const double dproj =
            (dik * xh(j) + djk * xh(i) - 2.0 * xh(i) * xh(j) * xh(k)) / r;
        out[k](i, j) = detail::inv_two_pi *
                       (dij * de1 * sl * xh(k) + dproj * v.e2 +
                        xh(i) * xh(j) * v.de2 * sl * xh(k));
      }
    }
  }
  return out;
}

// Pressure kernel Q_j(x) = (1/2pi) x_j/|x|^2 of the Stokes fundamental pair.
inline Eigen::Vector2d pressure_kernel(const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  return detail::inv_two_pi * x / x.squaredNorm();
}

// grad_x Q(x); out(j,k) = partial_k Q_j.
inline Eigen::Matrix2d pressure_kernel_gradient(const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r2 = x.squaredNorm();
  Eigen::Matrix2d out;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      out(j, k) = detail::inv_two_pi *
                  (((j == k) ? 1.0 : 0.0) / r2 - 2.0 * x(j) * x(k) / (r2 * r2));
  return out;
}

// Steady 2D Stokeslet V_{ij}(x) = (1/4pi)(-delta_{ij} log|x| + x_i x_j/|x|^2).
inline Eigen::Matrix2d steady_stokeslet(const Eigen::Vector2d& x) {
  detail::require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double lg = -0.5 * std::log(r2);
  Eigen::Matrix2d out;
  out(0, 0) = detail::inv_four_pi * (lg + x(0) * x(0) / r2);
  out(1, 1) = detail::inv_four_pi * (lg + x(1) * x(1) / r2);
  out(0, 1) = detail::inv_four_pi * (x(0) * x(1) / r2);
  out(1, 0) = out(0, 1);
  return out;
}

}  // namespace exstokes
