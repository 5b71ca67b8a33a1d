// casimir-spin: torque on a spinning dielectric ellipsoid from vacuum
// fluctuations, plus the oracle suite validating every formula.
//
// Exit codes: 0 success, 2 configuration error, 3 physics/numerics error,
// 4 oracle disagreement, 5 I/O error.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "casimir_spin/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace casimir_spin;
using namespace casimir_spin::cli;

namespace {

struct FlagValues {
  std::string config_path, out, format, cutoff_shape, spectrum_out;
  std::string inject = "none";
  int workers = 0;
  double a = 0, b = 0, c = 0, eps = 0, eps1 = 0;
  double Omega = 0, theta = 0, omega = 0, cutoff = 0, Ex = 0, Ez = 0;
};

struct NumericFlag {
  const char* flag;
  const char* help;
  double FlagValues::*src;
  double RunConfig::*dst;
};

constexpr NumericFlag numeric_flags[] = {
    {"--a", "semi-axis a", &FlagValues::a, &RunConfig::a},
    {"--b", "semi-axis b", &FlagValues::b, &RunConfig::b},
    {"--c", "semi-axis c (symmetry axis when a = b)", &FlagValues::c, &RunConfig::c},
    {"--eps", "ambient permittivity", &FlagValues::eps, &RunConfig::eps},
    {"--eps1", "body permittivity", &FlagValues::eps1, &RunConfig::eps1},
    {"--Omega", "rotation rate about z", &FlagValues::Omega, &RunConfig::Omega},
    {"--theta", "tilt of the symmetry axis, radians in [0, pi]",
     &FlagValues::theta, &RunConfig::theta},
    {"--omega", "incident mode frequency", &FlagValues::omega, &RunConfig::omega},
    {"--cutoff", "vacuum cutoff frequency (0 = derive from body size)",
     &FlagValues::cutoff, &RunConfig::cutoff},
    {"--Ex", "incident field amplitude along x", &FlagValues::Ex, &RunConfig::Ex},
    {"--Ez", "incident field amplitude along z", &FlagValues::Ez, &RunConfig::Ez},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torque on a spinning dielectric ellipsoid from vacuum fluctuations"};
  app.require_subcommand(1);
  FlagValues v;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", v.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", v.out, "report path (stdout when omitted)");
    sub->add_option("--format", v.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", v.workers, "worker thread count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cutoff-shape", v.cutoff_shape, "sharp or exponential cutoff")
        ->check(CLI::IsMember({"sharp", "exponential"}));
    for (const NumericFlag& nf : numeric_flags) {
      sub->add_option(nf.flag, v.*(nf.src), nf.help);
    }
  };

  CLI::App* depol =
      app.add_subcommand("depol", "depolarization factors and polarizability");
  CLI::App* mode =
      app.add_subcommand("mode-torque", "torque from a single incident mode");
  CLI::App* vacuum =
      app.add_subcommand("vacuum", "vacuum-fluctuation torque integral");
  CLI::App* verify =
      app.add_subcommand("verify", "run the cross-validation oracle suite");
  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep written as CSV rows");
  for (CLI::App* sub : {depol, mode, vacuum, verify, sweep}) add_common(sub);
  vacuum->add_option("--spectrum-out", v.spectrum_out,
                     "also write the sampled integrand to this CSV path");
  verify->add_option("--inject-fault", v.inject,
                     "test fixture: corrupt one formula on purpose")
      ->check(CLI::IsMember({"none", "prefactor", "sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit clean, parse errors are config errors
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig cfg =
        v.config_path.empty() ? RunConfig{} : load_config_file(v.config_path);
    for (const NumericFlag& nf : numeric_flags) {
      if (sub->count(nf.flag) > 0) cfg.*(nf.dst) = v.*(nf.src);
    }
    if (sub->count("--out") > 0) cfg.out = v.out;
    if (sub->count("--format") > 0) cfg.format = v.format;
    if (sub->count("--workers") > 0) cfg.workers = v.workers;
    if (sub->count("--cutoff-shape") > 0) cfg.cutoff_shape = v.cutoff_shape;
    if (sub == vacuum && sub->count("--spectrum-out") > 0) {
      cfg.spectrum_out = v.spectrum_out;
    }
    cfg.validate();

    if (sub == depol) return cmd_depol(cfg);
    if (sub == mode) return cmd_mode_torque(cfg);
    if (sub == vacuum) return cmd_vacuum(cfg);
    if (sub == verify) {
      const FaultInjection fault = v.inject == "prefactor"
                                       ? FaultInjection::prefactor
                                   : v.inject == "sign" ? FaultInjection::sign
                                                        : FaultInjection::none;
      return cmd_verify(cfg, fault);
    }
    return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 5;
  } catch (const ConsistencyError& e) {
    std::cerr << "oracle failure: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "physics error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
