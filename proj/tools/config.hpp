// Run configuration for the command-line tools: a flat key = value file
// format, command-line overrides, and the resolved-config echo that every
// report embeds so a run can be reproduced from its own output.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace casimir_spin::cli {

// Scale factors of the unit system the numbers are expressed in.  c and
// hbar enter the computations directly; length and time are carried and
// echoed so downstream tooling can convert.
struct UnitSystem {
  double length = 1.0;
  double time = 1.0;
  double c = 1.0;
  double hbar = 1.0;
};

struct SweepAxis {
  std::string parameter;  // any numeric parameter name, e.g. "Omega"
  double from = 0.0;
  double to = 0.0;
  int count = 1;
  bool log_spacing = false;
};

struct RunConfig {
  // body geometry and permittivities
  double a = 1.0, b = 1.0, c = 1.0;
  double eps = 1.0;   // ambient
  double eps1 = 3.0;  // body
  // rotation state
  double Omega = 0.0, theta = 0.0;
  // incident mode
  double omega = 1.0, Ex = 1.0, Ez = 0.0;
  // vacuum integral: 0 means "derive the cutoff from the body size"
  double cutoff = 0.0;
  std::string cutoff_shape = "sharp";  // sharp | exponential
  UnitSystem units;
  std::vector<SweepAxis> sweep;  // at most two axes
  std::string out;           // report path; empty = stdout
  std::string spectrum_out;  // vacuum integrand CSV path; empty = skip
  std::string format = "csv";  // csv | json
  int workers = 0;  // 0 = CASIMIR_SPIN_WORKERS, then hardware count

  // Pointer to the named numeric field (sweeps and flag overrides), or
  // nullptr if the name is not a numeric parameter.
  double* numeric_slot(std::string_view name);

  // Structural checks (format tags, sweep axes, units).  The physical
  // invariants are enforced by the library types each command builds.
  void validate() const;
};

// Locale-independent decimal formatting, 17 significant digits.
std::string format_double(double x);

// Parse a config file; errors carry "path:line:" diagnostics.
RunConfig load_config_file(const std::string& path);

// Worker-count resolution: explicit config value, then the
// CASIMIR_SPIN_WORKERS environment variable, then the hardware count.
int resolve_workers(const RunConfig& cfg);

// The resolved configuration as ordered key/value text, echoed in reports.
// Feeding these lines back through load_config_file reproduces the run.
std::vector<std::pair<std::string, std::string>> resolved_entries(
    const RunConfig& cfg);

}  // namespace casimir_spin::cli
