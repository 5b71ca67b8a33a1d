// Ellipsoid geometry and depolarization factors.
//
// The depolarization factor of the axis with semi-axis p is
//   m_p = (abc/2) * int_0^inf dz / ((z+p^2) R(z)),
//   R(z) = sqrt((z+a^2)(z+b^2)(z+c^2)),
// and the three factors sum to one.  The infinite domain is mapped to
// [0,1) with z = s^2 t/(1-t), s = max semi-axis; the transformed
// integrand is regular at t=0 and decays like sqrt(1-t) at t=1.
#pragma once

#include <algorithm>
#include <cmath>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/errors.hpp"
#include "casimir_spin/quadrature.hpp"

namespace casimir_spin {

template <class S = double>
struct Ellipsoid {
  S a, b, c;           // semi-axes along X, Y, Z
  S eps_ambient = 1;   // relative permittivity of the surrounding medium
  S eps_body = 1;      // relative permittivity of the dielectric

  void validate() const {
    if (!(a > S(0)) || !(b > S(0)) || !(c > S(0)) || !std::isfinite(a) ||
        !std::isfinite(b) || !std::isfinite(c)) {
      throw DomainError("ellipsoid semi-axes must be positive and finite");
    }
    if (!(eps_ambient > S(0)) || !std::isfinite(eps_ambient)) {
      throw DomainError("ambient permittivity must be positive and finite");
    }
    if (!std::isfinite(eps_body)) {
      throw DomainError("body permittivity must be finite");
    }
  }

  S max_axis() const { return std::max({a, b, c}); }

  // a == b within the degeneracy window: the z axis is a symmetry axis.
  bool axisymmetric_about_z() const {
    return std::abs(a - b) <= degenerate_axis_tol<S> * std::max(a, b);
  }
};

template <class S = double>
struct DepolarizationFactors {
  S m_x, m_y, m_z;
  S achieved_error;  // max single-axis quadrature error estimate (absolute)
  S sum() const { return m_x + m_y + m_z; }
};

namespace detail {

// One axis factor.  The arguments are the owning semi-axis p and the other
// two semi-axes; q and r enter symmetrically, and the shared scale factors
// are computed from the sorted triple, so the result is bit-identical under
// any permutation of the ellipsoid's axes.
template <class S>
QuadratureResult<S> axial_depolarization(S p, S q, S r, S volume_factor,
                                         S s_max, S tol) {
  const S qq = std::min(q, r);
  const S rr = std::max(q, r);
  const S p2 = p * p, q2 = qq * qq, r2 = rr * rr, s2 = s_max * s_max;
  auto integrand = [=](S t) {
    const S one_m = S(1) - t;
    const S z = s2 * t / one_m;
    const S u = z + p2;
    const S jac = s2 / (one_m * one_m);
    return jac / (u * std::sqrt(u * ((z + q2) * (z + r2))));
  };
  auto res = integrate_adaptive(integrand, S(0), S(1), tol);
  res.value *= volume_factor / 2;
  res.error_estimate *= volume_factor / 2;
  return res;
}

}  // namespace detail

template <class S>
DepolarizationFactors<S> depolarization_factors(
    const Ellipsoid<S>& e, S tol = default_depolarization_tol<S>) {
  e.validate();
  if (!(tol > S(0)) || tol > S(1e-3)) {
    throw DomainError("depolarization tolerance must lie in (0, 1e-3]");
  }
  S lo = e.a, mid = e.b, hi = e.c;
  if (lo > mid) std::swap(lo, mid);
  if (mid > hi) std::swap(mid, hi);
  if (lo > mid) std::swap(lo, mid);
  const S volume_factor = lo * mid * hi;
  const auto fx = detail::axial_depolarization(e.a, e.b, e.c, volume_factor, hi, tol);
  const auto fy = detail::axial_depolarization(e.b, e.a, e.c, volume_factor, hi, tol);
  const auto fz = detail::axial_depolarization(e.c, e.a, e.b, volume_factor, hi, tol);
  return {fx.value, fy.value, fz.value,
          std::max({fx.error_estimate, fy.error_estimate, fz.error_estimate})};
}

}  // namespace casimir_spin
