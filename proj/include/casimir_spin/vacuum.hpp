// Casimir friction: per-mode torques summed over the zero-point spectrum.
//
// Each vacuum mode of frequency w contributes mean-square field hbar w/(2V)
// spread isotropically over three axes, and the mode count per unit
// frequency is 8 pi V w^2 / c^3.  Feeding the isotropic share into the
// small-Om per-mode torque gives the integrand
//   dGamma/dw = -(4 pi / 3) A (hbar Om alpha^2 / c^6) g(th) w^5,
//   g(th) = 2 sin^4 th + 4 sin^2 th cos^2 th,
// with A an order-unity angular prefactor left configurable (the
// polarization/direction average is only fixed to order of magnitude).
// The quantization volume cancels exactly.  A sharp cutoff at w_c yields
//   Gamma_C = -(2 pi / 9) A hbar Om alpha^2 g(th) (w_c / c)^6,
// reported together with the dimensionless ratio against
// hbar Om (alpha/(abc))^2.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/ellipsoid.hpp"
#include "casimir_spin/errors.hpp"
#include "casimir_spin/polarizability.hpp"
#include "casimir_spin/quadrature.hpp"
#include "casimir_spin/rotating.hpp"

namespace casimir_spin {

enum class CutoffRule { fixed, size_derived };
enum class CutoffShape { sharp, exponential };

template <class S = double>
struct VacuumIntegrationConfig {
  S cutoff_omega = 0;  // used by the fixed rule; must then be > 0
  CutoffRule rule = CutoffRule::size_derived;
  CutoffShape shape = CutoffShape::sharp;
  S hbar = 1;
  S light_speed = 1;
  S quantization_volume = 1;  // cancels; kept to make that testable
  S angular_prefactor = 1;
  int quadrature_points = 64;

  void validate() const {
    if (!(hbar > S(0)) || !(light_speed > S(0)) || !(quantization_volume > S(0))) {
      throw ConfigError("hbar, c and the quantization volume must be positive");
    }
    if (!(angular_prefactor > S(0)) || !std::isfinite(angular_prefactor)) {
      throw ConfigError("angular prefactor must be positive and finite");
    }
    if (quadrature_points < 64) {
      throw ConfigError("vacuum integration needs at least 64 quadrature points");
    }
    if (rule == CutoffRule::fixed && !(cutoff_omega > S(0))) {
      throw ConfigError("fixed cutoff frequency must be positive");
    }
  }
};

template <class S = double>
struct CasimirTorqueResult {
  S gamma_c = 0;
  std::vector<std::pair<S, S>> integrand_samples;  // (omega, dGamma/domega)
  S dimensionless_ratio = 0;  // gamma_c / (hbar Omega (alpha/(abc))^2)
  S cutoff_used = 0;
  S alpha = 0;
};

template <class S>
S mode_density(S omega, S volume, S light_speed = 1) {
  if (!(omega >= S(0)) || !(volume > S(0)) || !(light_speed > S(0))) {
    throw DomainError("mode density needs omega >= 0, V > 0, c > 0");
  }
  const S c3 = light_speed * light_speed * light_speed;
  return 8 * pi_v<S> * volume * omega * omega / c3;
}

template <class S>
S per_mode_field_square(S omega, S volume, S hbar = 1) {
  if (!(omega >= S(0)) || !(volume > S(0)) || !(hbar > S(0))) {
    throw DomainError("per-mode field needs omega >= 0, V > 0, hbar > 0");
  }
  return hbar * omega / (2 * volume);
}

template <class S>
S resolved_cutoff(const Ellipsoid<S>& e, const VacuumIntegrationConfig<S>& cfg) {
  cfg.validate();
  if (cfg.rule == CutoffRule::size_derived) {
    e.validate();
    return cfg.light_speed / e.max_axis();
  }
  return cfg.cutoff_omega;
}

namespace detail {

// alpha of an axisymmetric ellipsoid; ShapeError for triaxial bodies.
template <class S>
S anisotropic_polarizability(const Ellipsoid<S>& e) {
  const auto m = depolarization_factors(e);
  const auto tensor = polarizability_tensor(e, m);
  const auto split = alpha_beta_split(tensor, Vec3<S>(0, 0, 1));
  return split.alpha;
}

template <class S>
S spectral_integrand(S omega, S alpha, const SpinState<S>& spin,
                     const VacuumIntegrationConfig<S>& cfg, S cutoff) {
  const S volume = cfg.quantization_volume;
  const S share = per_mode_field_square(omega, volume, cfg.hbar) / 3;
  const S density = mode_density(omega, volume, cfg.light_speed);
  const auto [st, ct] = tilt_trig(spin.theta);
  const S c3 = cfg.light_speed * cfg.light_speed * cfg.light_speed;
  // small-Om per-mode torque with E_x^2 = E_z^2 = share
  const S per_mode = -(alpha * alpha * omega * omega * spin.Omega / c3) *
                     share * (2 * st * st * st * st + 4 * st * st * ct * ct);
  S value = cfg.angular_prefactor * density * per_mode;
  if (cfg.shape == CutoffShape::exponential) value *= std::exp(-omega / cutoff);
  return value;
}

template <class S>
std::vector<std::pair<S, S>> sample_spectrum(S alpha, const SpinState<S>& spin,
                                             const VacuumIntegrationConfig<S>& cfg,
                                             S cutoff, int n_samples) {
  std::vector<std::pair<S, S>> out;
  out.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const S omega = cutoff * S(i) / S(n_samples - 1);
    out.emplace_back(omega, spectral_integrand(omega, alpha, spin, cfg, cutoff));
  }
  return out;
}

}  // namespace detail

template <class S>
std::vector<std::pair<S, S>> torque_spectrum(const Ellipsoid<S>& e,
                                             const SpinState<S>& spin,
                                             const VacuumIntegrationConfig<S>& cfg,
                                             int n_samples) {
  if (n_samples < 2) throw DomainError("need at least two spectrum samples");
  spin.validate();
  const S cutoff = resolved_cutoff(e, cfg);
  const S alpha = detail::anisotropic_polarizability(e);
  return detail::sample_spectrum(alpha, spin, cfg, cutoff, n_samples);
}

// Entry point with the anisotropic polarizability supplied by the caller
// (when alpha is known, or to study its scaling in isolation).
template <class S>
CasimirTorqueResult<S> casimir_torque_from_alpha(
    S alpha, const Ellipsoid<S>& e, const SpinState<S>& spin,
    const VacuumIntegrationConfig<S>& cfg) {
  spin.validate();
  const S cutoff = resolved_cutoff(e, cfg);

  auto integrand = [&](S omega) {
    return detail::spectral_integrand(omega, alpha, spin, cfg, cutoff);
  };
  // Sharp cutoff: the integrand is the polynomial w^5, integrated exactly
  // by Gauss-Legendre at any order >= 3.  The exponential shape needs the
  // long tail; 80 cutoffs leave a remainder below 1e-34 of the total.
  S gamma;
  if (cfg.shape == CutoffShape::sharp) {
    gamma = integrate_gauss_legendre(integrand, S(0), cutoff, cfg.quadrature_points);
  } else {
    gamma = integrate_gauss_legendre(integrand, S(0), 80 * cutoff,
                                     std::max(cfg.quadrature_points, 256));
  }

  CasimirTorqueResult<S> out;
  out.gamma_c = gamma;
  out.cutoff_used = cutoff;
  out.alpha = alpha;
  const S abc = e.a * e.b * e.c;
  const S denom = cfg.hbar * spin.Omega * (alpha / abc) * (alpha / abc);
  out.dimensionless_ratio = denom != S(0) ? gamma / denom : S(0);
  out.integrand_samples = detail::sample_spectrum(alpha, spin, cfg, cutoff, 33);
  return out;
}

template <class S>
CasimirTorqueResult<S> casimir_torque(const Ellipsoid<S>& e,
                                      const SpinState<S>& spin,
                                      const VacuumIntegrationConfig<S>& cfg) {
  return casimir_torque_from_alpha(detail::anisotropic_polarizability(e), e,
                                   spin, cfg);
}

}  // namespace casimir_spin
