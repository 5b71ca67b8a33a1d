// Static polarizability of a dielectric ellipsoid.
//
// Principal values along each axis:
//   A_pp = abc / (3 [eps/(eps1 - eps) + m_p]),
// with eps the ambient and eps1 the body permittivity.  For a body that is
// rotationally symmetric about z (A_xx == A_yy) the tensor splits into an
// anisotropic part along the symmetry axis N and an isotropic rest:
//   A E = alpha N (N.E) + beta E,
//   alpha = A_zz - (A_xx + A_yy)/2,  beta = (A_xx + A_yy)/2.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/ellipsoid.hpp"
#include "casimir_spin/errors.hpp"

namespace casimir_spin {

template <class S = double>
using Vec3 = Eigen::Matrix<S, 3, 1>;

template <class S = double>
struct PolarizabilityTensor {
  S A_xx, A_yy, A_zz;
  // Populated only when A_xx == A_yy within the symmetry tolerance.
  std::optional<S> alpha;
  std::optional<S> beta;

  Eigen::Matrix<S, 3, 3> matrix() const {
    Eigen::Matrix<S, 3, 3> m = Eigen::Matrix<S, 3, 3>::Zero();
    m(0, 0) = A_xx;
    m(1, 1) = A_yy;
    m(2, 2) = A_zz;
    return m;
  }

  Vec3<S> apply(const Vec3<S>& field) const {
    return Vec3<S>(A_xx * field.x(), A_yy * field.y(), A_zz * field.z());
  }
};

template <class S = double>
struct AnisotropicSplit {
  S alpha;  // extra response along the symmetry axis
  S beta;   // isotropic response
  Vec3<S> axis;
};

// P = alpha N (N.E) + beta E.
template <class S>
Vec3<S> apply_anisotropic(const AnisotropicSplit<S>& split, const Vec3<S>& field) {
  return split.alpha * split.axis.dot(field) * split.axis + split.beta * field;
}

namespace detail {

template <class S>
S principal_polarizability(S ratio, S m, S volume_factor, char axis) {
  const S den = ratio + m;
  if (std::abs(den) <= S(1e-12) * std::max(S(1), std::abs(ratio))) {
    throw ResonanceError("polarizability denominator vanishes (resonance)", axis);
  }
  return volume_factor / (3 * den);
}

}  // namespace detail

template <class S>
PolarizabilityTensor<S> polarizability_tensor(const Ellipsoid<S>& e,
                                              const DepolarizationFactors<S>& m) {
  e.validate();
  PolarizabilityTensor<S> t;
  if (e.eps_body == e.eps_ambient) {
    // eps/(eps1-eps) diverges; every principal value tends to zero.
    t.A_xx = t.A_yy = t.A_zz = S(0);
    t.alpha = S(0);
    t.beta = S(0);
    return t;
  }
  const S ratio = e.eps_ambient / (e.eps_body - e.eps_ambient);
  const S volume_factor = e.a * e.b * e.c;
  t.A_xx = detail::principal_polarizability(ratio, m.m_x, volume_factor, 'x');
  t.A_yy = detail::principal_polarizability(ratio, m.m_y, volume_factor, 'y');
  t.A_zz = detail::principal_polarizability(ratio, m.m_z, volume_factor, 'z');
  const S scale = std::max({std::abs(t.A_xx), std::abs(t.A_yy), std::abs(t.A_zz)});
  if (std::abs(t.A_xx - t.A_yy) <= default_symmetry_tol<S> * scale) {
    t.beta = (t.A_xx + t.A_yy) / 2;
    t.alpha = t.A_zz - *t.beta;
  }
  return t;
}

// Split an axisymmetric tensor (A_xx == A_yy within tolerance) into the
// anisotropic/isotropic pair attached to the given symmetry axis.
template <class S>
AnisotropicSplit<S> alpha_beta_split(const PolarizabilityTensor<S>& t,
                                     const Vec3<S>& axis,
                                     S tol = default_symmetry_tol<S>) {
  const S norm = axis.norm();
  if (std::abs(norm - S(1)) > S(1e-12)) {
    throw DomainError("symmetry axis must be a unit vector");
  }
  const S scale = std::max({std::abs(t.A_xx), std::abs(t.A_yy), std::abs(t.A_zz), S(1e-300)});
  if (std::abs(t.A_xx - t.A_yy) > tol * scale) {
    throw ShapeError("alpha/beta split requires an axisymmetric tensor");
  }
  const S beta = (t.A_xx + t.A_yy) / 2;
  return {t.A_zz - beta, beta, axis};
}

}  // namespace casimir_spin
