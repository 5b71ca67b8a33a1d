#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "casimir_spin/casimir_spin.hpp"
#include "report.hpp"

namespace casimir_spin::cli {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

Ellipsoid<> body_of(const RunConfig& cfg) {
  Ellipsoid<> e{cfg.a, cfg.b, cfg.c, cfg.eps, cfg.eps1};
  e.validate();
  return e;
}

SpinState<> spin_of(const RunConfig& cfg) {
  SpinState<> s{cfg.Omega, cfg.theta};
  s.validate();
  return s;
}

IncidentMode<> mode_of(const RunConfig& cfg) {
  IncidentMode<> m{cfg.omega, cfg.Ex, cfg.Ez};
  m.validate();
  return m;
}

VacuumIntegrationConfig<> vacuum_of(const RunConfig& cfg) {
  VacuumIntegrationConfig<> v;
  v.rule = cfg.cutoff > 0 ? CutoffRule::fixed : CutoffRule::size_derived;
  v.cutoff_omega = cfg.cutoff;
  v.shape = cfg.cutoff_shape == "exponential" ? CutoffShape::exponential
                                              : CutoffShape::sharp;
  v.hbar = cfg.units.hbar;
  v.light_speed = cfg.units.c;
  return v;
}

// Closed-form factor of the symmetry axis, when the body has one; the
// quadrature route is cross-checked against it in the depol report.
struct SpheroidCheck {
  double closed = nan_v;
  double residual = nan_v;
};

SpheroidCheck spheroid_cross_check(const Ellipsoid<>& e,
                                   const DepolarizationFactors<>& m) {
  const auto factor = [](double equatorial, double polar) {
    if (equatorial == polar) return 1.0 / 3.0;
    if (polar > equatorial) {  // elongated along the symmetry axis
      const double ecc = std::sqrt(1.0 - equatorial * equatorial / (polar * polar));
      return prolate_axial_depolarization(ecc);
    }
    const double ecc = std::sqrt(1.0 - polar * polar / (equatorial * equatorial));
    return oblate_axial_depolarization(ecc);
  };
  SpheroidCheck out;
  double measured = nan_v;
  if (e.a == e.b) {
    out.closed = factor(e.a, e.c);
    measured = m.m_z;
  } else if (e.a == e.c) {
    out.closed = factor(e.a, e.b);
    measured = m.m_y;
  } else if (e.b == e.c) {
    out.closed = factor(e.b, e.a);
    measured = m.m_x;
  } else {
    return out;  // triaxial: no closed form
  }
  out.residual = std::abs(measured - out.closed) / out.closed;
  return out;
}

}  // namespace

int cmd_depol(const RunConfig& cfg) {
  const auto e = body_of(cfg);
  const auto m = depolarization_factors(e);
  const auto t = polarizability_tensor(e, m);
  const auto cross = spheroid_cross_check(e, m);

  Report r;
  r.config = resolved_entries(cfg);
  r.results = {
      {"m_x", m.m_x},
      {"m_y", m.m_y},
      {"m_z", m.m_z},
      {"sum_residual", m.sum() - 1.0},
      {"quadrature_error", m.achieved_error},
      {"A_xx", t.A_xx},
      {"A_yy", t.A_yy},
      {"A_zz", t.A_zz},
      {"alpha", t.alpha ? *t.alpha : nan_v},
      {"beta", t.beta ? *t.beta : nan_v},
      {"m_axis_closed_form", cross.closed},
      {"m_axis_closed_form_residual", cross.residual},
  };
  write_report(r, cfg);
  return 0;
}

int cmd_mode_torque(const RunConfig& cfg) {
  const auto e = body_of(cfg);
  const auto spin = spin_of(cfg);
  const auto mode = mode_of(cfg);
  const auto m = depolarization_factors(e);
  const auto t = polarizability_tensor(e, m);
  if (!t.alpha) {
    throw ShapeError("mode torque needs an axisymmetric body (a = b)");
  }
  const auto exact = mode_torque(*t.alpha, spin, mode, cfg.units.c);
  const auto linear = small_omega_torque(*t.alpha, spin, mode, cfg.units.c);
  const double scale = std::max(std::abs(exact.gamma_z), std::abs(linear.gamma_z));

  Report r;
  r.config = resolved_entries(cfg);
  r.results = {
      {"alpha", *t.alpha},
      {"beta", *t.beta},
      {"gamma_exact", exact.gamma_z},
      {"gamma_small_omega", linear.gamma_z},
      {"relative_difference",
       scale > 0 ? std::abs(exact.gamma_z - linear.gamma_z) / scale : 0.0},
      {"consistency_residual", exact.cross_check_residual},
  };
  for (std::size_t i = 0; i < exact.components.size(); ++i) {
    const std::string prefix = "component_" + std::to_string(i + 1) + "_";
    r.results.emplace_back(prefix + "frequency", exact.components[i].frequency);
    r.results.emplace_back(prefix + "torque", exact.components[i].contribution);
  }
  write_report(r, cfg);
  return 0;
}

int cmd_vacuum(const RunConfig& cfg) {
  const auto e = body_of(cfg);
  const auto spin = spin_of(cfg);
  const auto vcfg = vacuum_of(cfg);
  const auto res = casimir_torque(e, spin, vcfg);

  Report r;
  r.config = resolved_entries(cfg);
  r.results = {
      {"gamma_c", res.gamma_c},
      {"dimensionless_ratio", res.dimensionless_ratio},
      {"cutoff_used", res.cutoff_used},
      {"alpha", res.alpha},
  };
  write_report(r, cfg);

  if (!cfg.spectrum_out.empty()) {
    const auto spectrum = torque_spectrum(e, spin, vcfg, 129);
    std::vector<std::string> rows;
    rows.reserve(spectrum.size());
    for (const auto& [omega, density] : spectrum) {
      rows.push_back(format_double(omega) + "," + format_double(density));
    }
    write_table(cfg.spectrum_out, r.config, "omega,dgamma_domega", rows);
  }
  return 0;
}

namespace {

// ---- verify checks ------------------------------------------------------

void check_geometry(Report& r) {
  auto add = [&](const std::string& name, double residual, double tol) {
    r.checks.push_back({name, residual <= tol, residual, tol});
  };
  {
    DeterministicRng rng(101);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      const Ellipsoid<> e{rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
                          rng.log_uniform(0.1, 10.0), 1.0, 3.0};
      worst = std::max(worst, std::abs(depolarization_factors(e).sum() - 1.0));
    }
    add("depolarization_sum_rule", worst, 1e-9);
  }
  {
    const Ellipsoid<> e{1.0, 1.0, 1.0, 1.0, 4.0};
    const auto m = depolarization_factors(e);
    const double dev = std::max({std::abs(m.m_x - 1.0 / 3), std::abs(m.m_y - 1.0 / 3),
                                 std::abs(m.m_z - 1.0 / 3)});
    add("sphere_isotropy", dev, 1e-10);
    const auto t = polarizability_tensor(e, m);
    add("sphere_zero_anisotropy", std::abs(*t.alpha), 1e-12 * std::abs(*t.beta));
  }
  {
    DeterministicRng rng(202);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const double ecc = rng.uniform(0.0, 0.999);
      const double ax = std::sqrt(1.0 - ecc * ecc);
      {
        const auto m = depolarization_factors(Ellipsoid<>{ax, ax, 1.0, 1.0, 3.0});
        const double closed = prolate_axial_depolarization(ecc);
        worst = std::max(worst, std::abs(m.m_z - closed) / closed);
      }
      {
        const auto m = depolarization_factors(Ellipsoid<>{1.0, 1.0, ax, 1.0, 3.0});
        const double closed = oblate_axial_depolarization(ecc);
        worst = std::max(worst, std::abs(m.m_z - closed) / closed);
      }
    }
    add("spheroid_closed_form", worst, 1e-8);
  }
  {
    DeterministicRng rng(303);
    double worst = 0;
    for (int i = 0; i < 25; ++i) {
      const double a = rng.log_uniform(0.2, 5.0);
      const double b = rng.log_uniform(0.2, 5.0);
      const double c = rng.log_uniform(0.2, 5.0);
      const auto m = depolarization_factors(Ellipsoid<>{a, b, c, 1.0, 3.0});
      const double via_rd = a * b * c / 3.0 * carlson_rd(b * b, c * c, a * a);
      worst = std::max(worst, std::abs(m.m_x - via_rd) / via_rd);
    }
    add("elliptic_integral_route", worst, 1e-9);
  }
}

void check_stress_oracle(Report& r, FaultInjection fault) {
  auto add = [&](const std::string& name, double residual, double tol) {
    r.checks.push_back({name, residual <= tol, residual, tol});
  };
  using C = std::complex<double>;
  {
    DeterministicRng rng(404);
    const double frozen = stress_to_analytic_ratio<double>;
    double worst = 0;
    int measured = 0;
    while (measured < 10) {
      CVec3<> amp;
      for (int d = 0; d < 3; ++d) {
        amp[d] = C(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      }
      if (std::abs(circular_spin_density(amp)) < 1e-2 * amp.squaredNorm()) continue;
      const double omega = rng.uniform(0.5, 2.0);
      const ComplexDipoleAmplitude<> p{amp, omega};
      double analytic = radiated_torque_z(p).gamma_z;
      if (fault == FaultInjection::prefactor) analytic *= 1.02;
      const double radius = rng.uniform(5.0, 50.0) / p.wavenumber();
      const auto oracle = stress_tensor_torque_oracle(p, radius, 32);
      if (oracle.gamma_z * analytic <= 0) {
        worst = std::numeric_limits<double>::infinity();  // sign disagreement
        break;
      }
      worst = std::max(worst, std::abs(oracle.gamma_z / analytic - frozen) / frozen);
      ++measured;
    }
    add("stress_oracle_prefactor", worst, 1e-6);
  }
  {
    const CVec3<> amp(C(0.8, 0.0), C(0.0, -0.8), C(0.1, 0.2));
    const ComplexDipoleAmplitude<> p{amp, 1.3};
    const double k = p.wavenumber();
    double first = 0, worst = 0;
    for (const double kr : {5.0, 50.0, 500.0}) {
      const double gamma = stress_tensor_torque_oracle(p, kr / k, 32).gamma_z;
      if (kr == 5.0) {
        first = gamma;
      } else {
        worst = std::max(worst, std::abs(gamma - first) / std::abs(first));
      }
    }
    add("stress_oracle_r_independence", worst, 1e-6);
  }
}

void check_rotating(Report& r, FaultInjection fault) {
  auto add = [&](const std::string& name, double residual, double tol) {
    r.checks.push_back({name, residual <= tol, residual, tol});
  };
  {
    // five-line spectrum against a discrete Fourier projection of the
    // directly-sampled polarization signal
    DeterministicRng rng(505);
    double worst = 0;
    for (int i = 0; i < 60; ++i) {
      const double w0 = rng.uniform(0.3, 1.5);
      const int n_w = rng.uniform_int(5, 12);
      const int n_Om = rng.uniform_int(1, std::max(1, (n_w - 1) / 2));
      const SpinState<> spin{n_Om * w0, rng.uniform(0.1, pi_v<double> - 0.1)};
      const IncidentMode<> mode{n_w * w0, rng.uniform(-2.0, 2.0),
                                rng.uniform(-2.0, 2.0)};
      const double alpha = rng.uniform(0.2, 2.0);
      const double beta = rng.uniform(0.0, 1.0);
      const auto dec =
          decompose_rotating_polarization(alpha, spin, mode, 1.0, beta);
      const std::function<Vec3<>(double)> signal = [&](double t) {
        const AnisotropicSplit<> split{alpha, beta, spin.axis_at(t)};
        return apply_anisotropic(split, mode.field_at(t));
      };
      const int max_harmonic = n_w + 2 * n_Om;
      for (const auto& comp : dec.components) {
        const int harmonic = n_w + comp.harmonic * n_Om;
        const auto dft =
            fourier_vector_amplitude(signal, w0, harmonic, max_harmonic);
        worst = std::max(worst,
                         (dft - comp.amplitude.amplitude).cwiseAbs().maxCoeff());
      }
    }
    add("spectral_decomposition_dft", worst, 1e-10);
  }
  {
    // closed-form torque vs the per-component spectral sum, and the
    // resistive sign gamma * Omega <= 0
    DeterministicRng rng(606);
    double worst = 0;
    double sign_worst = 0;
    for (int i = 0; i < 200; ++i) {
      const double alpha = rng.uniform(0.1, 3.0);
      const double omega = rng.uniform(0.3, 3.0);
      const double ratio = rng.uniform(0.01, 0.49);
      const double sign = rng.unit() < 0.5 ? -1.0 : 1.0;
      const SpinState<> spin{sign * ratio * omega,
                             rng.uniform(0.05, pi_v<double> - 0.05)};
      const IncidentMode<> mode{omega, rng.uniform(-2.0, 2.0),
                                rng.uniform(-2.0, 2.0)};
      const auto res = mode_torque(alpha, spin, mode);
      worst = std::max(worst, res.cross_check_residual);
      double gamma = res.gamma_z;
      if (fault == FaultInjection::sign) gamma = -gamma;
      sign_worst = std::max(sign_worst, gamma * (spin.Omega > 0 ? 1.0 : -1.0));
    }
    add("mode_torque_component_sum", worst, 1e-10);
    add("resistive_sign", sign_worst, 0.0);
  }
}

// Measures the small-spin quadratic approach and the weight of the
// E_z^2 sin^2(th) cos^2(th) term; returns the measured weight so the report
// can document it.
double check_small_spin(Report& r) {
  auto add = [&](const std::string& name, double residual, double tol) {
    r.checks.push_back({name, residual <= tol, residual, tol});
  };
  const double alpha = 0.8;
  const SpinState<> base{0.0, 1.1};
  const IncidentMode<> mode{1.0, 1.3, 0.7};
  {
    const int n = 13;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < n; ++j) {
      const double ratio = 1e-4 * std::pow(1e3, double(j) / (n - 1));
      const SpinState<> spin{ratio * mode.omega, base.theta};
      const double exact = mode_torque(alpha, spin, mode).gamma_z;
      const double lin = small_omega_torque(alpha, spin, mode).gamma_z;
      const double dev = std::abs(exact - lin) / std::abs(lin);
      const double x = std::log(ratio), y = std::log(dev);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    add("small_spin_quadratic_approach", std::abs(slope - 2.0), 0.05);
  }
  // finite-difference weight of the tilt-coupling term (E_x = 0 isolates it)
  const double theta = pi_v<double> / 4;
  const SpinState<> spin{1e-6, theta};
  const IncidentMode<> pure_z{1.0, 0.0, 1.0};
  const double gamma = mode_torque(alpha, spin, pure_z).gamma_z;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double unit_term = -alpha * alpha * pure_z.omega * pure_z.omega *
                           spin.Omega * st * st * ct * ct;
  const double weight = gamma / unit_term;
  add("tilt_coupling_weight", std::abs(weight - 4.0), 1e-6);
  return weight;
}

void check_vacuum(Report& r) {
  auto add = [&](const std::string& name, double residual, double tol) {
    r.checks.push_back({name, residual <= tol, residual, tol});
  };
  const Ellipsoid<> prolate{1.0, 1.0, 2.0, 1.0, 5.0};
  VacuumIntegrationConfig<> cfg;  // size-derived sharp cutoff
  {
    const double g1 = casimir_torque(prolate, {1e-3, pi_v<double> / 3}, cfg).gamma_c;
    const double g2 = casimir_torque(prolate, {2e-3, pi_v<double> / 3}, cfg).gamma_c;
    add("vacuum_spin_linearity", std::abs(g2 / g1 - 2.0), 1e-12);
  }
  {
    VacuumIntegrationConfig<> fixed = cfg;
    fixed.rule = CutoffRule::fixed;
    fixed.cutoff_omega = 0.4;
    const double g1 = casimir_torque(prolate, {1e-3, pi_v<double> / 3}, fixed).gamma_c;
    fixed.cutoff_omega = 0.8;
    const double g2 = casimir_torque(prolate, {1e-3, pi_v<double> / 3}, fixed).gamma_c;
    add("vacuum_cutoff_power", std::abs(g2 / g1 - 64.0), 1e-9);
  }
  {
    const SpinState<> spin{1e-3, pi_v<double> / 3};
    const double g1 = casimir_torque_from_alpha(0.7, prolate, spin, cfg).gamma_c;
    const double g2 = casimir_torque_from_alpha(1.4, prolate, spin, cfg).gamma_c;
    add("vacuum_alpha_square", std::abs(g2 / g1 - 4.0), 0.0);
  }
  {
    const SpinState<> spin{1e-3, pi_v<double> / 3};
    double first = 0, worst = 0;
    for (const double volume : {1.0, 1e3, 1e6}) {
      VacuumIntegrationConfig<> v = cfg;
      v.quantization_volume = volume;
      const double g = casimir_torque(prolate, spin, v).gamma_c;
      if (volume == 1.0) {
        first = g;
      } else {
        worst = std::max(worst, std::abs(g - first) / std::abs(first));
      }
    }
    add("vacuum_volume_independence", worst, 1e-12);
  }
  {
    double sign_worst = 0;
    for (const double Om : {1e-3, -1e-3, 0.7, -0.7}) {
      const double g = casimir_torque(prolate, {Om, pi_v<double> / 3}, cfg).gamma_c;
      sign_worst = std::max(sign_worst, g * (Om > 0 ? 1.0 : -1.0));
    }
    add("vacuum_resistive_sign", sign_worst, 0.0);
  }
  {
    // order of magnitude of the size-derived estimate for a 2:1 body
    const auto res = casimir_torque(prolate, {1e-3, pi_v<double> / 2}, cfg);
    add("vacuum_ratio_magnitude", std::abs(std::log10(std::abs(res.dimensionless_ratio))),
        2.0);
  }
}

}  // namespace

int cmd_verify(const RunConfig& cfg, FaultInjection fault) {
  Report r;
  r.config = resolved_entries(cfg);
  check_geometry(r);
  check_stress_oracle(r, fault);
  check_rotating(r, fault);
  const double ez_weight = check_small_spin(r);
  check_vacuum(r);

  int failed = 0;
  for (const CheckRow& c : r.checks) failed += c.pass ? 0 : 1;
  r.results = {
      {"checks_total", double(r.checks.size())},
      {"checks_failed", double(failed)},
      // the tilt-coupling weight measured by the finite-difference oracle;
      // the two-candidate question (2 vs 4) resolves to 4
      {"ez_weight_measured", ez_weight},
      {"ez_weight_resolved", 4.0},
      {"ez_weight_alternative_deviation", std::abs(ez_weight - 2.0)},
  };
  write_report(r, cfg);
  return failed == 0 ? 0 : 4;
}

namespace {

// One sweep grid point: inputs in column order, nan outputs for bodies
// without a symmetry axis.
std::string sweep_row(const RunConfig& q) {
  const auto e = body_of(q);
  const auto m = depolarization_factors(e);
  const auto t = polarizability_tensor(e, m);

  double alpha = nan_v, beta = nan_v;
  double gamma_mode = nan_v, gamma_small = nan_v;
  double gamma_vac = nan_v, vac_ratio = nan_v, cutoff_used = nan_v;
  if (t.alpha) {
    alpha = *t.alpha;
    beta = *t.beta;
    const auto spin = spin_of(q);
    const auto mode = mode_of(q);
    gamma_mode = mode_torque(alpha, spin, mode, q.units.c).gamma_z;
    gamma_small = small_omega_torque(alpha, spin, mode, q.units.c).gamma_z;
    const auto vac = casimir_torque_from_alpha(alpha, e, spin, vacuum_of(q));
    gamma_vac = vac.gamma_c;
    vac_ratio = vac.dimensionless_ratio;
    cutoff_used = vac.cutoff_used;
  }

  const double values[] = {q.a,       q.b,    q.c,     q.eps,     q.eps1,
                           q.Omega,   q.theta, q.omega, q.Ex,      q.Ez,
                           q.cutoff,  m.m_x,  m.m_y,   m.m_z,     t.A_xx,
                           t.A_yy,    t.A_zz, alpha,   beta,      gamma_mode,
                           gamma_small, gamma_vac, vac_ratio, cutoff_used};
  std::string row;
  for (const double v : values) {
    if (!row.empty()) row += ',';
    row += format_double(v);
  }
  return row;
}

std::vector<double> axis_values(const SweepAxis& ax) {
  std::vector<double> v(std::size_t(ax.count));
  for (int i = 0; i < ax.count; ++i) {
    if (ax.count == 1) {
      v[std::size_t(i)] = ax.from;
      continue;
    }
    const double s = double(i) / (ax.count - 1);
    v[std::size_t(i)] = ax.log_spacing
                            ? ax.from * std::pow(ax.to / ax.from, s)
                            : ax.from + (ax.to - ax.from) * s;
  }
  return v;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep.empty()) {
    throw ConfigError("sweep needs at least one sweep axis (sweep.1.*)");
  }
  const auto outer = axis_values(cfg.sweep[0]);
  const bool two_axes = cfg.sweep.size() > 1;
  const auto inner = two_axes ? axis_values(cfg.sweep[1]) : std::vector<double>{0.0};
  const std::size_t total = outer.size() * inner.size();

  // fail on an unwritable path before any computation runs
  std::ofstream probe;
  if (!cfg.out.empty()) {
    probe.open(cfg.out, std::ios::binary);
    if (!probe) throw IoError(cfg.out + ": cannot open output file");
    probe.close();
  }

  std::vector<std::string> rows(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancelled{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total || cancelled.load()) return;
      RunConfig local = cfg;
      *local.numeric_slot(cfg.sweep[0].parameter) = outer[i / inner.size()];
      if (two_axes) {
        *local.numeric_slot(cfg.sweep[1].parameter) = inner[i % inner.size()];
      }
      try {
        rows[i] = sweep_row(local);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        cancelled.store(true);
        return;
      }
    }
  };

  const int workers = std::min<std::size_t>(std::size_t(resolve_workers(cfg)), total);
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  write_table(cfg.out, resolved_entries(cfg),
              "a,b,c,eps,eps1,Omega,theta,omega,Ex,Ez,cutoff,"
              "m_x,m_y,m_z,A_xx,A_yy,A_zz,alpha,beta,"
              "gamma_mode,gamma_small_omega,gamma_vacuum,vacuum_ratio,cutoff_used",
              rows);
  return 0;
}

}  // namespace casimir_spin::cli
