// Independent reference computations used to validate the main numerics:
//  * closed-form spheroid depolarization factors (with series fallbacks
//    that stay accurate at small eccentricity),
//  * Carlson's symmetric elliptic integral R_D, an alternative route to
//    the general depolarization integral,
//  * exact Fourier amplitude extraction for band-limited periodic signals.
// Nothing here shares code with the quadrature path it checks.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/dipole.hpp"
#include "casimir_spin/errors.hpp"

namespace casimir_spin {

// Axial depolarization factor of a prolate spheroid (c > a = b), as a
// function of eccentricity e^2 = 1 - a^2/c^2:
//   m = (1-e^2)/e^3 (atanh e - e).
// Below e = 0.1 the subtraction loses digits, so the series
//   m = (1-e^2) sum_n e^{2n}/(2n+3)
// is used instead.
template <class S>
S prolate_axial_depolarization(S ecc) {
  if (!(ecc >= S(0)) || !(ecc < S(1))) {
    throw DomainError("prolate eccentricity must lie in [0, 1)");
  }
  const S u = ecc * ecc;
  if (ecc < S(0.1)) {
    S term = 1 - u;
    S sum = 0;
    for (int n = 0; n < 60; ++n) {
      const S add = term / S(2 * n + 3);
      sum += add;
      if (std::abs(add) < S(1e-18) * std::abs(sum)) break;
      term *= u;
    }
    return sum;
  }
  return (1 - u) / (ecc * ecc * ecc) * (std::atanh(ecc) - ecc);
}

// Axial (flattened-axis) depolarization factor of an oblate spheroid
// (c < a = b), e^2 = 1 - c^2/a^2:
//   m = (1 - sqrt(1-e^2) asin(e)/e) / e^2,
// again with a small-e series built from the product of the asin(e)/e and
// sqrt(1-e^2) expansions.
template <class S>
S oblate_axial_depolarization(S ecc) {
  if (!(ecc >= S(0)) || !(ecc < S(1))) {
    throw DomainError("oblate eccentricity must lie in [0, 1)");
  }
  const S u = ecc * ecc;
  if (ecc < S(0.1)) {
    // coefficients of asin(e)/e = sum a_n u^n and sqrt(1-u) = sum b_n u^n
    constexpr int N = 24;
    S a[N], b[N];
    a[0] = 1;
    b[0] = 1;
    for (int n = 1; n < N; ++n) {
      a[n] = a[n - 1] * S(2 * n - 1) / S(2 * n) * S(2 * n - 1) / S(2 * n + 1);
      b[n] = b[n - 1] * S(2 * n - 3) / S(2 * n);
    }
    // m = (1 - product)/u; the constant terms cancel exactly, so work with
    // the product coefficients p_n directly: m = -sum_{n>=1} p_n u^{n-1}.
    S sum = 0;
    S upow = 1;
    for (int n = 1; n < N; ++n) {
      S pn = 0;
      for (int k = 0; k <= n; ++k) pn += a[k] * b[n - k];
      sum -= pn * upow;
      upow *= u;
    }
    return sum;
  }
  return (1 - std::sqrt(1 - u) * std::asin(ecc) / ecc) / u;
}

// Equatorial factor of either spheroid, from the sum rule.
template <class S>
S spheroid_equatorial_depolarization(S axial) {
  return (1 - axial) / 2;
}

// Carlson R_D(x, y, z) by the standard duplication algorithm.  The
// depolarization factor of the axis with semi-axis a in an (a, b, c)
// ellipsoid is (abc/3) R_D(b^2, c^2, a^2).
template <class S>
S carlson_rd(S x, S y, S z) {
  if (!(x >= S(0)) || !(y >= S(0)) || !(z > S(0)) || x + y == S(0)) {
    throw DomainError("carlson_rd requires x,y >= 0, z > 0, x+y > 0");
  }
  const S errtol = S(0.0015);
  S sum = 0, fac = 1, ave = 0, dx = 0, dy = 0, dz = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const S sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const S lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac /= 4;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    ave = (x + y + 3 * z) / 5;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const S ea = dx * dy;
  const S eb = dz * dz;
  const S ec = ea - eb;
  const S ed = ea - 6 * eb;
  const S ee = ed + ec + ec;
  const S c1 = S(3) / 14, c2 = S(1) / 6, c3 = S(9) / 22, c4 = S(3) / 26;
  const S c5 = c3 / 4, c6 = S(1.5) * c4;
  return 3 * sum + fac *
                       (1 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                        dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
}

// Exact Fourier amplitude of a band-limited periodic vector signal, in the
// convention f(t) = sum_m Re(F_m e^{i m w0 t}).  For a trigonometric
// polynomial with harmonics up to max_harmonic, sampling more than
// 2*max_harmonic + 1 equispaced points over one period makes the discrete
// projection exact.
template <class S>
CVec3<S> fourier_vector_amplitude(const std::function<Vec3<S>(S)>& signal,
                                  S base_omega, int harmonic, int max_harmonic) {
  if (!(base_omega > S(0))) throw DomainError("base frequency must be positive");
  if (harmonic < 0) throw DomainError("harmonic index must be non-negative");
  if (max_harmonic < harmonic) {
    throw DomainError("max harmonic must bound the requested one");
  }
  using C = std::complex<S>;
  const int samples = 4 * max_harmonic + 8;
  const S period = 2 * pi_v<S> / base_omega;
  CVec3<S> acc = CVec3<S>::Zero();
  for (int j = 0; j < samples; ++j) {
    const S t = period * S(j) / S(samples);
    const C w = std::exp(C(0, -S(harmonic) * base_omega * t));
    const Vec3<S> f = signal(t);
    for (int d = 0; d < 3; ++d) acc[d] += f[d] * w;
  }
  const S norm = (harmonic == 0 ? S(1) : S(2)) / S(samples);
  return norm * acc;
}

}  // namespace casimir_spin
