// Independent extended-precision oracle for K0/K1 with complex argument,
// used only by tests. Quad precision (__float128) throughout:
//   |z| <= 16  ascending power series
//   |z| >  16  Steed-style continued fraction
// Both branches are cross-checked against frozen mpmath values in the test
// suite before being trusted elsewhere.
#pragma once

#include <complex>
#include <quadmath.h>
#include <utility>

namespace exstokes_test {

using qc = __complex128;

inline __float128 qabs(qc z) { return cabsq(z); }

inline std::pair<qc, qc> oracle_k01_series(qc z) {
  const __float128 gammaq =
      0.5772156649015328606065120900824024310Q;
  const qc u = z * z / 4.0Q;
  const qc lg = clogq(z / 2.0Q) + gammaq;
  qc i0 = 1.0Q, i1h = 1.0Q;
  qc s0 = 0.0Q, s1 = 1.0Q;
  qc term0 = 1.0Q, term1 = 1.0Q;
  __float128 hk = 0.0Q, hk1 = 1.0Q;
  for (int k = 1; k < 160; ++k) {
    term0 = term0 * u / static_cast<__float128>(k * k);
    term1 = term1 * u / static_cast<__float128>(k * (k + 1));
    hk += 1.0Q / k;
    hk1 += 1.0Q / (k + 1);
    i0 += term0;
    i1h += term1;
    s0 += term0 * hk;
    s1 += term1 * (hk + hk1);
    if (k > 8 && qabs(term0) < 1e-38Q * qabs(i0)) break;
  }
  const qc k0 = -lg * i0 + s0;
  const qc k1 = 1.0Q / z + (z / 2.0Q) * (lg * i1h) - (z / 4.0Q) * s1;
  return {k0, k1};
}

inline std::pair<qc, qc> oracle_k01_cf_scaled(qc z) {
  const __float128 piq = 3.141592653589793238462643383279502884Q;
  const __float128 a1 = 0.25Q;
  qc b = 2.0Q * (z + 1.0Q);
  qc d = 1.0Q / b;
  qc delh = d, h = d;
  qc q1 = 0.0Q, q2 = 1.0Q;
  qc q = a1, c = a1, a = -a1;
  qc s = 1.0Q + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0Q * (i - 1);
    c = -a * c / static_cast<__float128>(i);
    const qc qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0Q;
    d = 1.0Q / (b + a * d);
    delh = (b * d - 1.0Q) * delh;
    h += delh;
    const qc dels = q * delh;
    s += dels;
    if (qabs(dels) < 1e-36Q * qabs(s)) break;
  }
  h = a1 * h;
  const qc k0 = csqrtq(piq / (2.0Q * z)) / s;
  const qc k1 = k0 * (z + 0.5Q - h) / z;
  return {k0, k1};
}

// Returns {e^z K0(z), e^z K1(z)} in quad precision.
inline std::pair<qc, qc> oracle_k01_scaled(qc z) {
  if (qabs(z) <= 16.0Q) {
    auto [k0, k1] = oracle_k01_series(z);
    const qc ez = cexpq(z);
    return {k0 * ez, k1 * ez};
  }
  return oracle_k01_cf_scaled(z);
}

inline qc to_qc(std::complex<double> z) {
  qc out;
  __real__ out = z.real();
  __imag__ out = z.imag();
  return out;
}

inline std::complex<double> to_cd(qc z) {
  return {static_cast<double>(__real__ z), static_cast<double>(__imag__ z)};
}

// Scaled pair as double-precision complex.
inline std::pair<std::complex<double>, std::complex<double>> oracle_k01_scaled_d(
    std::complex<double> z) {
  auto [k0, k1] = oracle_k01_scaled(to_qc(z));
  return {to_cd(k0), to_cd(k1)};
}

// Unscaled pair; underflows for large Re z exactly like the production code.
inline std::pair<std::complex<double>, std::complex<double>> oracle_k01_d(
    std::complex<double> z) {
  auto [k0, k1] = oracle_k01_scaled(to_qc(z));
  const qc emz = cexpq(-to_qc(z));
  return {to_cd(k0 * emz), to_cd(k1 * emz)};
}

}  // namespace exstokes_test
