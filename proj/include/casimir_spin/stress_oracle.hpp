// Maxwell-stress surface integration: an independent measurement of the
// torque exerted on an oscillating dipole, used to validate the analytic
// radiated-torque formula.
//
// The time-averaged stress tensor of the fields (Gaussian units),
//   M_ij = (1/4pi) [ Re(E_i E_j* + B_i B_j*)/2 - delta_ij (|E|^2+|B|^2)/4 ],
// is integrated as torque density r x (M n) over a sphere centred on the
// dipole.  In steady state the field angular momentum inside the sphere is
// constant on average, so the integral equals the reaction torque on the
// source and is independent of the sphere radius — that independence is the
// oracle's own validity check.
//
// Quadrature: Gauss-Legendre in cos(polar) x uniform trapezoid in azimuth.
// The integrand is a low-order trigonometric polynomial on the sphere, so
// both rules converge spectrally; a grid vs half-grid comparison flags
// underresolution.
#pragma once

#include <cmath>

#include "casimir_spin/dipole.hpp"
#include "casimir_spin/quadrature.hpp"

namespace casimir_spin {

namespace detail {

template <class S>
S stress_torque_z_on_sphere(const ComplexDipoleAmplitude<S>& textbook_amp,
                            S radius, int n_polar) {
  using C = std::complex<S>;
  std::vector<S> u, wu;
  gauss_legendre(n_polar, u, wu);
  const int n_azim = 2 * n_polar;
  const S dphi = 2 * pi_v<S> / S(n_azim);
  CompensatedSum<S> acc;
  for (int i = 0; i < n_polar; ++i) {
    const S cu = u[i];
    const S su = std::sqrt(std::max(S(0), 1 - cu * cu));
    for (int j = 0; j < n_azim; ++j) {
      const S phi = dphi * S(j);
      const Vec3<S> n(su * std::cos(phi), su * std::sin(phi), cu);
      const auto fs = hertz_field(textbook_amp, Vec3<S>(radius * n));
      const C en = fs.E.dot(n.template cast<C>());  // conjugates E
      const C bn = fs.B.dot(n.template cast<C>());
      const S e2 = fs.E.squaredNorm();
      const S b2 = fs.B.squaredNorm();
      // (M n) * 4pi
      Vec3<S> flux;
      for (int d = 0; d < 3; ++d) {
        flux[d] = std::real(fs.E[d] * en + fs.B[d] * bn) / 2 -
                  n[d] * (e2 + b2) / 4;
      }
      acc.add(wu[i] * dphi * (n.x() * flux.y() - n.y() * flux.x()));
    }
  }
  // torque density r x (M n), r = R n, area element R^2 dOmega
  return radius * radius * radius * acc.value() / (4 * pi_v<S>);
}

}  // namespace detail

template <class S>
TorqueResult<S> stress_tensor_torque_oracle(const ComplexDipoleAmplitude<S>& p,
                                            S sphere_radius, int n_polar) {
  p.validate();
  if (!(sphere_radius > S(0))) {
    throw DomainError("stress oracle: sphere radius must be positive");
  }
  if (n_polar < 16) {
    throw DomainError("stress oracle: need at least 16 points per dimension");
  }
  // The field routine expects the e^{-i omega t} phase convention; the
  // amplitude type uses e^{+i omega t}.  Conjugating bridges the two.
  ComplexDipoleAmplitude<S> textbook = p;
  textbook.amplitude = p.amplitude.conjugate();

  const S fine = detail::stress_torque_z_on_sphere(textbook, sphere_radius, n_polar);
  const S coarse =
      detail::stress_torque_z_on_sphere(textbook, sphere_radius, n_polar / 2);
  const S diff = std::abs(fine - coarse);
  // Natural torque scale of the problem, so a zero-torque amplitude does not
  // trip the warning on roundoff noise.
  const S k = p.wavenumber();
  const S scale = std::max({std::abs(fine), std::abs(coarse),
                            k * k * k * S(p.amplitude.squaredNorm())});

  TorqueResult<S> out;
  out.gamma_z = fine;
  out.components = {{p.omega, fine}};
  out.method = TorqueMethod::stress_oracle;
  out.error_estimate = diff;
  out.resolution_warning = scale > S(0) && diff > S(1e-8) * scale;
  return out;
}

}  // namespace casimir_spin
