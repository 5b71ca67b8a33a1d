#include <cmath>
#include <complex>

#include "casimir_spin/dipole.hpp"
#include "casimir_spin/rng.hpp"
#include "doctest.h"

using namespace casimir_spin;
using C = std::complex<double>;

namespace {

ComplexDipoleAmplitude<> dip(const CVec3<>& p, double omega, double c = 1.0) {
  ComplexDipoleAmplitude<> out;
  out.amplitude = p;
  out.omega = omega;
  out.light_speed = c;
  return out;
}

// Second implementation of the same field formula, written entirely in real
// arithmetic with the real and imaginary parts propagated separately.
struct RealImagField {
  Vec3<> e_re, e_im, b_re, b_im;
};

RealImagField reference_field(const Vec3<>& p_re, const Vec3<>& p_im, double k,
                              const Vec3<>& pos) {
  const double r = pos.norm();
  const Vec3<> n = pos / r;
  const double c = std::cos(k * r), s = std::sin(k * r);
  const double np_re = n.dot(p_re), np_im = n.dot(p_im);
  const Vec3<> t_re = p_re - np_re * n, t_im = p_im - np_im * n;
  const Vec3<> l_re = 3.0 * np_re * n - p_re, l_im = 3.0 * np_im * n - p_im;

  // k^2 e^{ikr}/r (T_re + i T_im)
  const double f = k * k / r;
  Vec3<> e_re = f * (c * t_re - s * t_im);
  Vec3<> e_im = f * (c * t_im + s * t_re);
  // (1/r^3 - ik/r^2) e^{ikr} = (c/r^3 + ks/r^2) + i (s/r^3 - kc/r^2)
  const double gr = c / (r * r * r) + k * s / (r * r);
  const double gi = s / (r * r * r) - k * c / (r * r);
  e_re += gr * l_re - gi * l_im;
  e_im += gr * l_im + gi * l_re;

  // (k^2 + ik/r) e^{ikr} / r = [(k^2 c - ks/r) + i (k^2 s + kc/r)] / r
  const double hr = (k * k * c - k * s / r) / r;
  const double hi = (k * k * s + k * c / r) / r;
  const Vec3<> x_re = n.cross(p_re), x_im = n.cross(p_im);
  const Vec3<> b_re = hr * x_re - hi * x_im;
  const Vec3<> b_im = hr * x_im + hi * x_re;
  return {e_re, e_im, b_re, b_im};
}

CVec3<> random_amplitude(DeterministicRng& rng, double scale = 1.0) {
  CVec3<> p;
  for (int d = 0; d < 3; ++d) {
    p[d] = C(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
  }
  return p;
}

}  // namespace

TEST_CASE("field agrees with an independent real/imaginary-split evaluation") {
  DeterministicRng rng(1234);
  for (int i = 0; i < 200; ++i) {
    const CVec3<> p = random_amplitude(rng);
    const double omega = rng.uniform(0.1, 4.0);
    const Vec3<> pos(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    if (pos.norm() < 0.05) continue;
    const auto fs = hertz_field(dip(p, omega), pos);
    const auto ref = reference_field(p.real(), p.imag(), omega, pos);
    const double escale = std::sqrt(fs.E.squaredNorm());
    const double bscale = std::sqrt(fs.B.squaredNorm()) + escale;
    for (int d = 0; d < 3; ++d) {
      CHECK(std::abs(std::real(fs.E[d]) - ref.e_re[d]) <= 1e-13 * escale);
      CHECK(std::abs(std::imag(fs.E[d]) - ref.e_im[d]) <= 1e-13 * escale);
      CHECK(std::abs(std::real(fs.B[d]) - ref.b_re[d]) <= 1e-13 * bscale);
      CHECK(std::abs(std::imag(fs.B[d]) - ref.b_im[d]) <= 1e-13 * bscale);
    }
  }
}

TEST_CASE("the two fields satisfy the source-free curl equations") {
  // For amplitudes with outgoing factor e^{ikr} (time factor e^{-i w t}):
  //   curl E = ik B,  curl B = -ik E.
  const CVec3<> p(C(0.3, -0.7), C(1.1, 0.2), C(-0.5, 0.4));
  const double omega = 1.3;
  const Vec3<> pos(0.9, -1.2, 0.7);
  const double h = 1e-5;

  auto field_at = [&](const Vec3<>& x) { return hertz_field(dip(p, omega), x); };
  CVec3<> curl_e = CVec3<>::Zero(), curl_b = CVec3<>::Zero();
  for (int d = 0; d < 3; ++d) {
    Vec3<> dx = Vec3<>::Zero();
    dx[d] = h;
    const auto plus = field_at(pos + dx);
    const auto minus = field_at(pos - dx);
    const CVec3<> de = (plus.E - minus.E) / (2 * h);
    const CVec3<> db = (plus.B - minus.B) / (2 * h);
    // accumulate epsilon_{abd} d_d F_b
    const int a = (d + 1) % 3, b = (d + 2) % 3;
    curl_e[a] -= de[b];
    curl_e[b] += de[a];
    curl_b[a] -= db[b];
    curl_b[b] += db[a];
  }
  const auto fs = field_at(pos);
  const C ik(0, omega);  // c = 1
  const double scale = std::sqrt(fs.E.squaredNorm() + fs.B.squaredNorm());
  CHECK((curl_e - ik * fs.B).norm() <= 1e-6 * scale);
  CHECK((curl_b + ik * fs.E).norm() <= 1e-6 * scale);
}

TEST_CASE("axial observation point keeps only the longitudinal terms") {
  const CVec3<> p(C(0), C(0), C(2.0, 0.0));
  const auto fs = hertz_field(dip(p, 1.0), Vec3<>(0, 0, 3.0));
  // transverse part vanishes; E = 2P (1/r^3 - ik/r^2) e^{ikr}
  CHECK(std::abs(fs.E[0]) <= 1e-15);
  CHECK(std::abs(fs.E[1]) <= 1e-15);
  const double r = 3.0;
  const C expected = C(2.0) * 2.0 * std::exp(C(0, r)) *
                     (C(1.0 / (r * r * r)) - C(0, 1.0 / (r * r)));
  CHECK(std::abs(fs.E[2] - expected) <= 1e-14 * std::abs(expected));
  CHECK(fs.B.norm() <= 1e-15);
}

TEST_CASE("far field is transverse, decays as 1/r, and carries |B| = |n x E|") {
  const CVec3<> p(C(0), C(0), C(1.5, 0.0));
  const double k = 1.0;
  for (double r : {150.0, 300.0, 1200.0}) {
    const Vec3<> pos(r, 0, 0);
    const auto fs = hertz_field(dip(p, k), pos);
    const Vec3<> n = pos.normalized();
    const double emag = std::sqrt(fs.E.squaredNorm());
    // leading term k^2 e^{ikr}/r (0,0,p)
    const C lead = k * k * std::exp(C(0, k * r)) / r * 1.5;
    CHECK(std::abs(fs.E[2] - lead) <= 3.0 / (k * r) * std::abs(lead));
    CHECK(std::abs(unconjugated_dot(n, fs.E)) <= 2.0 / (k * r) * emag);
    const CVec3<> nxe = n.cast<C>().cross(fs.E);
    CHECK(std::abs(std::sqrt(fs.B.squaredNorm()) - nxe.norm()) <=
          3.0 / (k * r) * emag);
  }
  // 1/r decay within 1 percent for kr > 100
  const auto f1 = hertz_field(dip(p, k), Vec3<>(120.0, 0, 0));
  const auto f2 = hertz_field(dip(p, k), Vec3<>(240.0, 0, 0));
  const double ratio = std::sqrt(f1.E.squaredNorm() / f2.E.squaredNorm());
  CHECK(std::abs(ratio - 2.0) <= 0.01 * 2.0);
}

TEST_CASE("static limit reduces to the near-zone dipole field") {
  const CVec3<> p(C(0.4), C(-0.2), C(0.9));
  const auto fs = hertz_field(dip(p, 0.0), Vec3<>(1.0, 2.0, -0.5));
  CHECK(fs.B.norm() == 0.0);
  const Vec3<> pos(1.0, 2.0, -0.5);
  const double r = pos.norm();
  const Vec3<> n = pos / r;
  const Vec3<> pr = p.real();
  const Vec3<> expected = (3.0 * n.dot(pr) * n - pr) / (r * r * r);
  CHECK((fs.E.real() - expected).norm() <= 1e-14 * expected.norm());
  CHECK(fs.E.imag().norm() <= 1e-15);
}

TEST_CASE("field evaluation at the source is rejected") {
  CHECK_THROWS_AS(hertz_field(dip(CVec3<>::Zero(), 1.0), Vec3<>(0, 0, 0)),
                  SingularityError);
}

TEST_CASE("radiated torque basics") {
  // real amplitude: no circular spin, no torque
  const auto none = radiated_torque_z(dip(CVec3<>(C(1), C(2), C(3)), 2.0));
  CHECK(none.gamma_z == 0.0);
  CHECK(none.method == TorqueMethod::analytic);
  REQUIRE(none.components.size() == 1);
  CHECK(none.components[0].frequency == 2.0);

  // a globally phased real vector also gives zero
  const C phase = std::exp(C(0, 0.7));
  const auto phased =
      radiated_torque_z(dip(CVec3<>(phase * 1.0, phase * 2.0, phase * 3.0), 2.0));
  CHECK(std::abs(phased.gamma_z) <= 1e-14);

  // circular amplitude rotating with +z sense: resistive (negative) torque
  const auto circ = radiated_torque_z(dip(CVec3<>(C(1), C(0, -1), C(0)), 1.0));
  CHECK(circ.gamma_z < 0.0);
  CHECK(circ.gamma_z ==
        doctest::Approx(-2.0 * radiated_torque_prefactor<double>).epsilon(1e-14));

  // conjugate sense flips the sign exactly
  const auto anti = radiated_torque_z(dip(CVec3<>(C(1), C(0, 1), C(0)), 1.0));
  CHECK(anti.gamma_z == -circ.gamma_z);
}

TEST_CASE("torque scales as k^3 and |P|^2 and is rotation covariant") {
  DeterministicRng rng(777);
  for (int i = 0; i < 20; ++i) {
    const CVec3<> p = random_amplitude(rng);
    const double omega = rng.uniform(0.2, 3.0);
    const double g1 = radiated_torque_z(dip(p, omega)).gamma_z;
    const double g2 = radiated_torque_z(dip(p, 2 * omega)).gamma_z;
    if (std::abs(g1) > 1e-12) {
      CHECK(g2 / g1 == doctest::Approx(8.0).epsilon(1e-12));
    }
    const double g3 = radiated_torque_z(dip(CVec3<>(2.0 * p), omega)).gamma_z;
    CHECK(g3 == 4.0 * g1);

    const double phi = rng.uniform(0, 6.28);
    CVec3<> rotated;
    rotated[0] = std::cos(phi) * p[0] - std::sin(phi) * p[1];
    rotated[1] = std::sin(phi) * p[0] + std::cos(phi) * p[1];
    rotated[2] = p[2];
    const double g4 = radiated_torque_z(dip(rotated, omega)).gamma_z;
    const double scale = radiated_torque_prefactor<double> * omega * omega *
                         omega * p.squaredNorm();
    CHECK(std::abs(g4 - g1) <= 1e-12 * scale);
  }
}

TEST_CASE("amplitude validation") {
  CHECK_THROWS_AS(radiated_torque_z(dip(CVec3<>::Zero(), -1.0)), DomainError);
  auto bad = dip(CVec3<>::Zero(), 1.0);
  bad.light_speed = 0.0;
  CHECK_THROWS_AS(radiated_torque_z(bad), DomainError);
}
