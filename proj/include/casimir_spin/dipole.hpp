// Oscillating point dipole: exact field evaluation and radiated torque.
//
// Conventions (Gaussian units, c explicit):
//  * A complex amplitude P with frequency omega describes the real dipole
//    P(t) = (P e^{i omega t} + P* e^{-i omega t}) / 2.
//  * hertz_field evaluates the textbook field written for the opposite
//    phase convention, P(t) = Re(Q e^{-i omega t}) with outgoing factor
//    e^{ikr}:
//      E = k^2 (e^{ikr}/r) [Q - n (n.Q)]
//        + [3 n (n.Q) - Q] (1/r^3 - ik/r^2) e^{ikr},
//      B = (n x Q) (k^2 + ik/r) e^{ikr} / r.
//    Callers that start from the e^{+i omega t} amplitude must pass its
//    conjugate (the stress oracle does this internally).
//  * The analytic torque about z for one frequency component is
//      gamma_z = C k^3 i (P_x P_y* - P_y P_x*),
//    reported here with C = radiated_torque_prefactor; the Maxwell-stress
//    oracle measures the physical C = 1/3, a fixed ratio 1/(16 pi) below
//    this convention (see constants.hpp).
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/errors.hpp"
#include "casimir_spin/polarizability.hpp"

namespace casimir_spin {

template <class S = double>
using CVec3 = Eigen::Matrix<std::complex<S>, 3, 1>;

template <class S = double>
struct ComplexDipoleAmplitude {
  CVec3<S> amplitude = CVec3<S>::Zero();
  S omega = 0;        // >= 0
  S light_speed = 1;  // fixes k = omega / c

  S wavenumber() const { return omega / light_speed; }

  void validate() const {
    if (!(omega >= S(0)) || !std::isfinite(omega)) {
      throw DomainError("dipole frequency must be non-negative and finite");
    }
    if (!(light_speed > S(0))) {
      throw DomainError("light speed must be positive");
    }
  }
};

template <class S = double>
struct FieldSample {
  CVec3<S> E;
  CVec3<S> B;
  Vec3<S> position;
};

enum class TorqueMethod { analytic, stress_oracle };

template <class S = double>
struct TorqueComponent {
  S frequency;
  S contribution;
};

template <class S = double>
struct TorqueResult {
  S gamma_z = 0;
  std::vector<TorqueComponent<S>> components;
  TorqueMethod method = TorqueMethod::analytic;
  S cross_check_residual = 0;  // relative, when two routes were compared
  S error_estimate = 0;        // quadrature estimate, oracle only
  bool resolution_warning = false;
};

// Complex dot without conjugation; Eigen's dot() conjugates one side.
template <class S>
std::complex<S> unconjugated_dot(const Vec3<S>& n, const CVec3<S>& v) {
  return n.x() * v.x() + n.y() * v.y() + n.z() * v.z();
}

// Componentwise cross of a real direction with a complex vector.  Eigen's
// cross() conjugates its result for complex scalars, which is not wanted here.
template <class S>
CVec3<S> unconjugated_cross(const Vec3<S>& n, const CVec3<S>& v) {
  return CVec3<S>(n.y() * v.z() - n.z() * v.y(),
                  n.z() * v.x() - n.x() * v.z(),
                  n.x() * v.y() - n.y() * v.x());
}

template <class S>
FieldSample<S> hertz_field(const ComplexDipoleAmplitude<S>& p,
                           const Vec3<S>& position) {
  p.validate();
  const S r = position.norm();
  if (r == S(0)) {
    throw SingularityError("field requested at the dipole position");
  }
  using C = std::complex<S>;
  const Vec3<S> n = position / r;
  const S k = p.wavenumber();
  const C ik(0, k);
  const C phase = std::exp(ik * r);
  const C np = unconjugated_dot(n, p.amplitude);
  const CVec3<S> transverse = p.amplitude - np * n.template cast<C>();
  const CVec3<S> longitudinal = S(3) * np * n.template cast<C>() - p.amplitude;

  FieldSample<S> out;
  out.position = position;
  out.E = (k * k * phase / r) * transverse +
          (C(1) / (r * r * r) - ik / (r * r)) * phase * longitudinal;
  out.B = (k * k + ik / r) * (phase / r) * unconjugated_cross(n, p.amplitude);
  return out;
}

// i (P_x P_y* - P_y P_x*); real by construction.
template <class S>
S circular_spin_density(const CVec3<S>& amplitude) {
  return -2 * std::imag(amplitude.x() * std::conj(amplitude.y()));
}

template <class S>
TorqueResult<S> radiated_torque_z(const ComplexDipoleAmplitude<S>& p) {
  p.validate();
  const S k = p.wavenumber();
  TorqueResult<S> out;
  out.gamma_z =
      radiated_torque_prefactor<S> * k * k * k * circular_spin_density(p.amplitude);
  out.components = {{p.omega, out.gamma_z}};
  out.method = TorqueMethod::analytic;
  return out;
}

}  // namespace casimir_spin
