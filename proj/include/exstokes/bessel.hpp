// Modified Bessel functions K0, K1 for complex arguments in the open right
// half-plane, with overflow-safe scaled variants e^z K_n(z).
//
// Three evaluation branches:
//   |z| <= 4          ascending power series (long double accumulation)
//   4 < |z| < 16      Thompson-Barnett continued fraction (CF2)
//   |z| >= 16         asymptotic expansion, adaptively truncated
//
// The CF2 branch covers the band where the ascending series loses digits to
// cancellation (for Re z large) and the asymptotic expansion has not yet
// converged to full accuracy.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace exstokes {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;

namespace detail {

// Test hook used by the kernels-check negative control; always zero in
// normal operation.
inline double euler_gamma_perturbation = 0.0;

using cld = std::complex<long double>;

inline long double eg_ld() {
  return 0.577215664901532860606512090082L +
         static_cast<long double>(euler_gamma_perturbation);
}

// Ascending series (A&S 9.6.10-9.6.11), |z| <= 4. Returns {K0, K1}.
inline std::pair<cld, cld> bessel_k01_series(cld z) {
  const cld u = z * z / 4.0L;
  const cld lg = std::log(z / 2.0L) + eg_ld();  // log(z/2) + gamma

  cld i0 = 1.0L, i1h = 1.0L;     // I0 and I1/(z/2)
  cld s0 = 0.0L, s1 = 1.0L;      // harmonic-weighted sums (s1 k=0 term: H_0+H_1)
  cld term0 = 1.0L, term1 = 1.0L;
  long double hk = 0.0L, hk1 = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term0 *= u / static_cast<long double>(k * k);
    term1 *= u / static_cast<long double>(k * (k + 1));
    hk += 1.0L / k;
    hk1 += 1.0L / (k + 1);
    i0 += term0;
    i1h += term1;
    s0 += term0 * hk;
    s1 += term1 * (hk + hk1);
    if (std::abs(term0) < 1e-22L * std::abs(i0) && k > 4) break;
  }
  // K0 = -(log(z/2)+g) I0 + sum H_k u^k/(k!)^2
  const cld k0 = -lg * i0 + s0;
  // K1 = 1/z + (z/2)[(log(z/2)) I1h] - (z/4) sum (psi(k+1)+psi(k+2)) ...
  //    = 1/z + (z/2)[(lg - g) i1h] - (z/4)[-2 g i1h + s1... ]
  // psi(k+1)+psi(k+2) = -2g + H_k + H_{k+1}; combine with the log term:
  const cld k1 = 1.0L / z + (z / 2.0L) * (lg * i1h) - (z / 4.0L) * s1;
  return {k0, k1};
}

// Thompson-Barnett CF2 for Re z > 0 (NR 6.7 machinery with mu = 0).
// Returns scaled values {e^z K0, e^z K1}.
inline std::pair<cld, cld> bessel_k01_cf2_scaled(cld z) {
  const long double a1 = 0.25L;
  cld b = 2.0L * (z + 1.0L);
  cld d = 1.0L / b;
  cld delh = d, h = d;
  cld q1 = 0.0L, q2 = 1.0L;
  cld q = a1, c = a1, a = -a1;
  cld s = 1.0L + q * delh;
  for (int i = 2; i < 4000; ++i) {
    a -= 2.0L * (i - 1);
    c = -a * c / static_cast<long double>(i);
    const cld qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0L;
    d = 1.0L / (b + a * d);
    delh = (b * d - 1.0L) * delh;
    h += delh;
    const cld dels = q * delh;
    s += dels;
    if (std::abs(dels) < 1e-20L * std::abs(s)) break;
  }
  h = a1 * h;
  const long double pi_l = 3.141592653589793238462643383279L;
  const cld k0 = std::sqrt(pi_l / (2.0L * z)) / s;
  const cld k1 = k0 * (z + 0.5L - h) / z;
  return {k0, k1};
}

// Asymptotic expansion, adaptively truncated at the smallest term.
// Returns scaled values {e^z K0, e^z K1}; accurate for |z| >= 16.
inline std::pair<cld, cld> bessel_k01_asymptotic_scaled(cld z) {
  const long double pi_l = 3.141592653589793238462643383279L;
  cld sum0 = 1.0L, sum1 = 1.0L;
  cld t0 = 1.0L, t1 = 1.0L;
  long double prev = 1e30L;
  for (int k = 1; k < 60; ++k) {
    const long double m = 2.0L * k - 1.0L;
    t0 *= -(m * m) / (8.0L * k) / z;
    t1 *= (4.0L - m * m) / (8.0L * k) / z;
    const long double mag = std::abs(t0);
    if (mag >= prev) break;  // series started diverging
    prev = mag;
    sum0 += t0;
    sum1 += t1;
    if (mag < 1e-20L * std::abs(sum0)) break;
  }
  const cld pref = std::sqrt(pi_l / (2.0L * z));
  return {pref * sum0, pref * sum1};
}

// Core dispatch. Returns {K0, K1} scaled by e^z.
inline std::pair<cld, cld> bessel_k01_scaled_ld(cld z) {
  const long double az = std::abs(z);
  if (az <= 4.0L) {
    auto [k0, k1] = bessel_k01_series(z);
    const cld ez = std::exp(z);
    return {k0 * ez, k1 * ez};
  }
  if (az < 16.0L) return bessel_k01_cf2_scaled(z);
  return bessel_k01_asymptotic_scaled(z);
}

// e^{-z} I0(z), e^{-z} I1(z): ascending series for moderate |z|, asymptotic
// expansion (with the reflected e^{-2z} term) beyond.
inline std::pair<cld, cld> bessel_i01_scaled_ld(cld z) {
  const long double pi_l = 3.141592653589793238462643383279L;
  // series cancellation grows like e^{|z|(1 - cos arg z)}; switch at 16
  // where it is still < 1e-13 and the asymptotic branch has converged
  if (std::abs(z) <= 16.0L) {
    const cld u = z * z / 4.0L;
    cld i0 = 1.0L, i1h = 1.0L;  // I0 and I1/(z/2)
    cld t0 = 1.0L, t1 = 1.0L;
    for (int k = 1; k < 80; ++k) {
      t0 *= u / static_cast<long double>(k * k);
      t1 *= u / static_cast<long double>(k * (k + 1));
      i0 += t0;
      i1h += t1;
      if (std::abs(t0) < 1e-22L * std::abs(i0) && k > 4) break;
    }
    const cld emz = std::exp(-z);
    return {i0 * emz, (z / 2.0L) * i1h * emz};
  }
  // I_n(z) = e^z P_n(-1/z)/sqrt(2 pi z) + (+-i)^{2n+1}... reflected branch:
  //   e^{-z} I_n(z) = [P_n(-z) + r e^{-2z} P_n(z)] / sqrt(2 pi z),
  //   r = exp(sign(Im z) * i pi (n + 1/2))
  cld p0m = 1.0L, p1m = 1.0L, p0p = 1.0L, p1p = 1.0L;
  cld t0 = 1.0L, t1 = 1.0L;
  long double prev = 1e30L;
  for (int k = 1; k < 60; ++k) {
    const long double m = 2.0L * k - 1.0L;
    t0 *= (m * m) / (8.0L * k) / z;
    t1 *= (m * m - 4.0L) / (8.0L * k) / z;
    const long double mag = std::abs(t0);
    if (mag >= prev) break;
    prev = mag;
    const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    p0m += sgn * t0;
    p1m += sgn * t1;
    p0p += t0;
    p1p += t1;
    if (mag < 1e-20L * std::abs(p0m)) break;
  }
  const long double s = (z.imag() >= 0.0L) ? 1.0L : -1.0L;
  const cld r0(0.0L, s);        // exp(s i pi/2)
  const cld r1(0.0L, -s);       // exp(s i 3pi/2)
  const cld e2 = std::exp(-2.0L * z);
  const cld pref = 1.0L / std::sqrt(2.0L * pi_l * z);
  // main branch carries the unsigned sums, the reflected one alternates
  return {pref * (p0p + r0 * e2 * p0m), pref * (p1p + r1 * e2 * p1m)};
}

}  // namespace detail

// Complex argument restricted to the open right half-plane Re z > 0.
class RightHalfPlaneArg {
 public:
  explicit RightHalfPlaneArg(std::complex<double> z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("RightHalfPlaneArg: non-finite argument");
    if (!(z.real() > 0.0))
      throw std::domain_error("RightHalfPlaneArg: Re z must be positive");
  }
  std::complex<double> value() const { return z_; }

 private:
  std::complex<double> z_;
};

// K0(z) and K1(z), unscaled. Underflows to 0 for Re z large; use the scaled
// variants there.
inline std::pair<std::complex<double>, std::complex<double>> bessel_k01(
    RightHalfPlaneArg arg) {
  const detail::cld z(arg.value().real(), arg.value().imag());
  auto [k0, k1] = detail::bessel_k01_scaled_ld(z);
  const detail::cld emz = std::exp(-z);
  return {std::complex<double>(k0 * emz), std::complex<double>(k1 * emz)};
}

inline std::complex<double> bessel_k0(RightHalfPlaneArg arg) {
  return bessel_k01(arg).first;
}

inline std::complex<double> bessel_k1(RightHalfPlaneArg arg) {
  return bessel_k01(arg).second;
}

// I0(z) and I1(z), unscaled. Overflows for Re z large; use the scaled pair
// with K below for decaying products.
inline std::pair<std::complex<double>, std::complex<double>> bessel_i01(
    RightHalfPlaneArg arg) {
  const detail::cld z(arg.value().real(), arg.value().imag());
  auto [i0, i1] = detail::bessel_i01_scaled_ld(z);
  const detail::cld ez = std::exp(z);
  return {std::complex<double>(i0 * ez), std::complex<double>(i1 * ez)};
}

// e^{-z} I_order(z), finite throughout the right half-plane.
inline std::complex<double> bessel_i_scaled(int order, RightHalfPlaneArg arg) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("bessel_i_scaled: order must be 0 or 1");
  const detail::cld z(arg.value().real(), arg.value().imag());
  auto [i0, i1] = detail::bessel_i01_scaled_ld(z);
  return std::complex<double>(order == 0 ? i0 : i1);
}

// e^z K_order(z), finite for |z| up to 1e8 and beyond.
inline std::complex<double> bessel_k_scaled(int order, RightHalfPlaneArg arg) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("bessel_k_scaled: order must be 0 or 1");
  const detail::cld z(arg.value().real(), arg.value().imag());
  auto [k0, k1] = detail::bessel_k01_scaled_ld(z);
  return std::complex<double>(order == 0 ? k0 : k1);
}

}  // namespace exstokes
