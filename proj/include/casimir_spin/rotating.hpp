// Polarization of a spinning anisotropic dipole and the torque it feels
// from a single incident mode.
//
// The symmetry axis N(t) = (sin th cos Om t, sin th sin Om t, cos th)
// rotates about z; the incident field is E(t) = (E_x cos w t, 0, E_z cos w t).
// The anisotropic response P(t) = alpha N (N.E) then carries exactly five
// frequencies w, w +- Om, w +- 2Om with complex amplitudes (convention
// P(t) = Re(P e^{i nu t})):
//   nu = w -+ 2Om : (alpha E_x sin^2 th / 4) (1, +-i, 0)
//   nu = w -+  Om : (alpha sin th cos th / 2) (E_z, +-i E_z, E_x)
//   nu = w        : (alpha E_x sin^2 th / 2, 0, alpha E_z cos^2 th)
// A component pushed to negative frequency (Om > w/2) is folded back to
// |nu| with conjugated amplitude; the real field, and hence every torque,
// is unchanged.
//
// Net torque per mode, exact in Om:
//   gamma_z = alpha^2/(6 c^3) [ E_x^2 sin^4 th  T1
//                             + 4 E_z^2 sin^2 th cos^2 th  T2 ],
//   T1 = (w-2Om)^3 - (w+2Om)^3 = -4 Om (3 w^2 + 4 Om^2),
//   T2 = (w- Om)^3 - (w+ Om)^3 = -2 Om (3 w^2 +   Om^2),
// written in the expanded forms to avoid cancellation at small Om.  The
// E_z^2 weight 4 is the one the per-component sum and the finite-difference
// slope oracle both measure (the verify command reports this resolution).
// The same quantity computed by summing the single-frequency analytic
// torque over the five components differs by the fixed convention factor
// analytic_to_closed_form; both routes are evaluated and must agree.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/dipole.hpp"
#include "casimir_spin/errors.hpp"

namespace casimir_spin {

template <class S = double>
struct SpinState {
  S Omega = 0;  // angular speed about z; sign selects the rotation sense
  S theta = 0;  // tilt between rotation axis and symmetry axis, in [0, pi]

  void validate() const {
    if (!std::isfinite(Omega)) throw DomainError("spin rate must be finite");
    if (!(theta >= S(0)) || !(theta <= pi_v<S>)) {
      throw DomainError("tilt angle must lie in [0, pi]");
    }
  }

  Vec3<S> axis_at(S t) const {
    const S s = std::sin(theta);
    return Vec3<S>(s * std::cos(Omega * t), s * std::sin(Omega * t),
                   std::cos(theta));
  }
};

template <class S = double>
struct IncidentMode {
  S omega = 0;  // >= 0
  S E_x = 0;
  S E_z = 0;

  void validate() const {
    if (!(omega >= S(0)) || !std::isfinite(omega)) {
      throw DomainError("mode frequency must be non-negative and finite");
    }
    if (!std::isfinite(E_x) || !std::isfinite(E_z)) {
      throw DomainError("mode amplitudes must be finite");
    }
  }

  Vec3<S> field_at(S t) const {
    const S c = std::cos(omega * t);
    return Vec3<S>(E_x * c, S(0), E_z * c);
  }
};

template <class S = double>
struct SpectralComponent {
  ComplexDipoleAmplitude<S> amplitude;
  int harmonic;  // frequency offset in units of Omega: -2 .. +2
  bool folded;   // true if the raw frequency was negative
};

template <class S = double>
struct SpectralDecomposition {
  std::array<SpectralComponent<S>, 5> components;  // w-2Om, w-Om, w, w+Om, w+2Om

  // Reconstruct the real polarization at time t.
  Vec3<S> sample(S t) const {
    using C = std::complex<S>;
    Vec3<S> out = Vec3<S>::Zero();
    for (const auto& comp : components) {
      const C phase = std::exp(C(0, comp.amplitude.omega * t));
      for (int d = 0; d < 3; ++d) {
        out[d] += std::real(comp.amplitude.amplitude[d] * phase);
      }
    }
    return out;
  }
};

namespace detail {

// sin/cos of the tilt with sub-epsilon values snapped to zero, so the
// configurations that vanish identically (theta = 0, pi/2, pi) really
// produce zero instead of an O(1e-17) residue of the pi rounding.
template <class S>
struct TiltTrig {
  S sin_t, cos_t;
};

template <class S>
TiltTrig<S> tilt_trig(S theta) {
  S st = std::sin(theta);
  S ct = std::cos(theta);
  if (std::abs(st) < S(1e-15)) st = 0;
  if (std::abs(ct) < S(1e-15)) ct = 0;
  return {st, ct};
}

template <class S>
SpectralComponent<S> make_component(S nu, const CVec3<S>& amp, int harmonic,
                                    S light_speed) {
  SpectralComponent<S> out;
  out.harmonic = harmonic;
  out.folded = nu < S(0);
  out.amplitude.omega = out.folded ? -nu : nu;
  out.amplitude.amplitude = out.folded ? CVec3<S>(amp.conjugate()) : amp;
  out.amplitude.light_speed = light_speed;
  return out;
}

}  // namespace detail

// Exact five-line spectrum of P(t) = alpha N(t) (N(t).E(t)) [+ beta E(t)].
// The isotropic beta term contributes only at frequency w with a real
// amplitude and therefore no torque; it is kept as an optional input so
// that claim stays regression-tested.
template <class S>
SpectralDecomposition<S> decompose_rotating_polarization(
    S alpha, const SpinState<S>& spin, const IncidentMode<S>& mode,
    S light_speed = 1, S beta = 0) {
  spin.validate();
  mode.validate();
  if (!(light_speed > S(0))) throw DomainError("light speed must be positive");
  using C = std::complex<S>;
  const auto [st, ct] = detail::tilt_trig(spin.theta);
  const S w = mode.omega, Om = spin.Omega;
  const S quarter = alpha * mode.E_x * st * st / 4;
  const S half = alpha * st * ct / 2;

  const CVec3<S> plus2(C(quarter), C(0, quarter), C(0));
  const CVec3<S> minus2(C(quarter), C(0, -quarter), C(0));
  const CVec3<S> plus1(C(half * mode.E_z), C(0, half * mode.E_z), C(half * mode.E_x));
  const CVec3<S> minus1(C(half * mode.E_z), C(0, -half * mode.E_z), C(half * mode.E_x));
  const CVec3<S> centre(C(alpha * mode.E_x * st * st / 2 + beta * mode.E_x), C(0),
                        C(alpha * mode.E_z * ct * ct + beta * mode.E_z));

  SpectralDecomposition<S> out;
  out.components[0] = detail::make_component(w - 2 * Om, plus2, -2, light_speed);
  out.components[1] = detail::make_component(w - Om, plus1, -1, light_speed);
  out.components[2] = detail::make_component(w, centre, 0, light_speed);
  out.components[3] = detail::make_component(w + Om, minus1, 1, light_speed);
  out.components[4] = detail::make_component(w + 2 * Om, minus2, 2, light_speed);
  return out;
}

namespace detail {

template <class S>
S closed_form_mode_torque(S alpha, S theta, S Omega, S omega, S E_x, S E_z,
                          S light_speed) {
  const auto [st, ct] = tilt_trig(theta);
  const S t1 = -4 * Omega * (3 * omega * omega + 4 * Omega * Omega);
  const S t2 = -2 * Omega * (3 * omega * omega + Omega * Omega);
  const S c3 = light_speed * light_speed * light_speed;
  return alpha * alpha / (6 * c3) *
         (E_x * E_x * st * st * st * st * t1 +
          4 * E_z * E_z * st * st * ct * ct * t2);
}

}  // namespace detail

template <class S>
TorqueResult<S> mode_torque(S alpha, const SpinState<S>& spin,
                            const IncidentMode<S>& mode, S light_speed = 1,
                            S consistency_tol = default_consistency_tol<S>) {
  const auto spectrum =
      decompose_rotating_polarization(alpha, spin, mode, light_speed);
  const S closed = detail::closed_form_mode_torque(
      alpha, spin.theta, spin.Omega, mode.omega, mode.E_x, mode.E_z, light_speed);

  TorqueResult<S> out;
  out.method = TorqueMethod::analytic;
  CompensatedSum<S> sum;
  S magnitude = 0;  // sum of |contributions|, the roundoff scale of the sum
  for (const auto& comp : spectrum.components) {
    const S scaled = analytic_to_closed_form<S> *
                     radiated_torque_z(comp.amplitude).gamma_z;
    out.components.push_back({comp.amplitude.omega, scaled});
    sum.add(scaled);
    magnitude += std::abs(scaled);
  }
  const S diff = std::abs(closed - sum.value());
  const S scale = std::max(std::abs(closed), std::abs(sum.value()));
  out.cross_check_residual = scale > S(0) ? diff / scale : S(0);
  // For Om << w the +-harmonic contributions nearly cancel, so the sum's
  // roundoff is set by the summand magnitudes, not by the tiny result;
  // only flag disagreement above that floor.
  const S noise_floor =
      64 * std::numeric_limits<S>::epsilon() * magnitude;
  if (diff > std::max(consistency_tol * scale, noise_floor)) {
    throw ConsistencyError(
        "closed-form and per-component mode torques disagree",
        double(out.cross_check_residual));
  }
  out.gamma_z = closed;
  return out;
}

// Leading behaviour for Om << w: the exact Om-derivative of the closed form
// at Om = 0 times Om,
//   gamma_z = -(alpha^2 w^2 Om / c^3)(2 E_x^2 sin^4 th + 4 E_z^2 sin^2 th cos^2 th).
template <class S>
TorqueResult<S> small_omega_torque(S alpha, const SpinState<S>& spin,
                                   const IncidentMode<S>& mode,
                                   S light_speed = 1) {
  spin.validate();
  mode.validate();
  if (!(light_speed > S(0))) throw DomainError("light speed must be positive");
  const auto [st, ct] = detail::tilt_trig(spin.theta);
  const S c3 = light_speed * light_speed * light_speed;
  TorqueResult<S> out;
  out.method = TorqueMethod::analytic;
  out.gamma_z = -(alpha * alpha * mode.omega * mode.omega * spin.Omega / c3) *
                (2 * mode.E_x * mode.E_x * st * st * st * st +
                 4 * mode.E_z * mode.E_z * st * st * ct * ct);
  out.components = {{mode.omega, out.gamma_z}};
  return out;
}

}  // namespace casimir_spin
