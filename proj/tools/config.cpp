#include "config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "casimir_spin/errors.hpp"

namespace casimir_spin::cli {

std::string format_double(double x) {
  std::array<char, 48> buf;
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                     std::chars_format::general, 17);
  return std::string(buf.data(), p);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view v, const std::string& where) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(where + ": malformed number '" + std::string(v) + "'");
  }
  return x;
}

int parse_int(std::string_view v, const std::string& where) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(where + ": malformed integer '" + std::string(v) + "'");
  }
  return x;
}

constexpr std::array<std::string_view, 11> numeric_names = {
    "a", "b", "c", "eps", "eps1", "Omega", "theta", "omega", "Ex", "Ez",
    "cutoff"};

}  // namespace

double* RunConfig::numeric_slot(std::string_view name) {
  if (name == "a") return &a;
  if (name == "b") return &b;
  if (name == "c") return &c;
  if (name == "eps") return &eps;
  if (name == "eps1") return &eps1;
  if (name == "Omega") return &Omega;
  if (name == "theta") return &theta;
  if (name == "omega") return &omega;
  if (name == "Ex") return &Ex;
  if (name == "Ez") return &Ez;
  if (name == "cutoff") return &cutoff;
  return nullptr;
}

void RunConfig::validate() const {
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be 'csv' or 'json', got '" + format + "'");
  }
  if (cutoff_shape != "sharp" && cutoff_shape != "exponential") {
    throw ConfigError("cutoff shape must be 'sharp' or 'exponential', got '" +
                      cutoff_shape + "'");
  }
  if (!(cutoff >= 0) || !std::isfinite(cutoff)) {
    throw ConfigError("cutoff must be finite and >= 0 (0 = size-derived)");
  }
  if (workers < 0) throw ConfigError("workers must be >= 1");
  for (const double u : {units.length, units.time, units.c, units.hbar}) {
    if (!(u > 0) || !std::isfinite(u)) {
      throw ConfigError("unit scale factors must be positive and finite");
    }
  }
  if (sweep.size() > 2) throw ConfigError("at most two sweep axes are supported");
  for (const SweepAxis& ax : sweep) {
    bool known = false;
    for (const auto name : numeric_names) known = known || name == ax.parameter;
    if (!known) {
      throw ConfigError("unknown sweep parameter '" + ax.parameter + "'");
    }
    if (ax.count < 1) throw ConfigError("sweep count must be >= 1");
    if (!std::isfinite(ax.from) || !std::isfinite(ax.to)) {
      throw ConfigError("sweep bounds must be finite");
    }
    if (ax.log_spacing && (!(ax.from > 0) || !(ax.to > 0))) {
      throw ConfigError("log-spaced sweep bounds must be positive");
    }
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");

  RunConfig cfg;
  struct AxisDraft {
    SweepAxis axis;
    bool any = false, param = false, from = false, to = false, count = false;
  };
  std::array<AxisDraft, 2> drafts;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (value.empty()) {
      throw ConfigError(where + ": empty value for '" + std::string(key) + "'");
    }

    if (double* slot = cfg.numeric_slot(key)) {
      *slot = parse_double(value, where);
    } else if (key == "cutoff.shape") {
      cfg.cutoff_shape = std::string(value);
    } else if (key == "unit.length") {
      cfg.units.length = parse_double(value, where);
    } else if (key == "unit.time") {
      cfg.units.time = parse_double(value, where);
    } else if (key == "unit.c") {
      cfg.units.c = parse_double(value, where);
    } else if (key == "unit.hbar") {
      cfg.units.hbar = parse_double(value, where);
    } else if (key == "workers") {
      cfg.workers = parse_int(value, where);
    } else if (key == "format") {
      cfg.format = std::string(value);
    } else if (key == "out") {
      cfg.out = std::string(value);
    } else if (key == "spectrum.out") {
      cfg.spectrum_out = std::string(value);
    } else if (key.starts_with("sweep.")) {
      const std::string_view rest = key.substr(6);
      const auto dot = rest.find('.');
      if (dot != 1 || (rest[0] != '1' && rest[0] != '2')) {
        throw ConfigError(where + ": sweep keys look like sweep.1.param");
      }
      AxisDraft& d = drafts[rest[0] - '1'];
      const std::string_view field = rest.substr(dot + 1);
      d.any = true;
      if (field == "param") {
        d.axis.parameter = std::string(value);
        d.param = true;
      } else if (field == "from") {
        d.axis.from = parse_double(value, where);
        d.from = true;
      } else if (field == "to") {
        d.axis.to = parse_double(value, where);
        d.to = true;
      } else if (field == "count") {
        d.axis.count = parse_int(value, where);
        d.count = true;
      } else if (field == "spacing") {
        if (value == "linear") {
          d.axis.log_spacing = false;
        } else if (value == "log") {
          d.axis.log_spacing = true;
        } else {
          throw ConfigError(where + ": spacing must be 'linear' or 'log'");
        }
      } else {
        throw ConfigError(where + ": unknown sweep field '" +
                          std::string(field) + "'");
      }
    } else {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
  }

  if (drafts[1].any && !drafts[0].any) {
    throw ConfigError(path + ": sweep.2 requires sweep.1");
  }
  for (const AxisDraft& d : drafts) {
    if (!d.any) continue;
    if (!d.param || !d.from || !d.to || !d.count) {
      throw ConfigError(path + ": a sweep axis needs param, from, to and count");
    }
    cfg.sweep.push_back(d.axis);
  }
  return cfg;
}

int resolve_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  if (const char* env = std::getenv("CASIMIR_SPIN_WORKERS")) {
    const int n = parse_int(env, "CASIMIR_SPIN_WORKERS");
    if (n < 1) throw ConfigError("CASIMIR_SPIN_WORKERS must be >= 1");
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

std::vector<std::pair<std::string, std::string>> resolved_entries(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  auto num = [&](const char* key, double v) { out.emplace_back(key, format_double(v)); };
  num("a", cfg.a);
  num("b", cfg.b);
  num("c", cfg.c);
  num("eps", cfg.eps);
  num("eps1", cfg.eps1);
  num("Omega", cfg.Omega);
  num("theta", cfg.theta);
  num("omega", cfg.omega);
  num("Ex", cfg.Ex);
  num("Ez", cfg.Ez);
  num("cutoff", cfg.cutoff);
  out.emplace_back("cutoff.shape", cfg.cutoff_shape);
  num("unit.length", cfg.units.length);
  num("unit.time", cfg.units.time);
  num("unit.c", cfg.units.c);
  num("unit.hbar", cfg.units.hbar);
  out.emplace_back("workers", std::to_string(cfg.workers));
  out.emplace_back("format", cfg.format);
  if (!cfg.out.empty()) out.emplace_back("out", cfg.out);
  if (!cfg.spectrum_out.empty()) out.emplace_back("spectrum.out", cfg.spectrum_out);
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    const SweepAxis& ax = cfg.sweep[i];
    const std::string prefix = "sweep." + std::to_string(i + 1) + ".";
    out.emplace_back(prefix + "param", ax.parameter);
    out.emplace_back(prefix + "from", format_double(ax.from));
    out.emplace_back(prefix + "to", format_double(ax.to));
    out.emplace_back(prefix + "count", std::to_string(ax.count));
    out.emplace_back(prefix + "spacing", ax.log_spacing ? "log" : "linear");
  }
  return out;
}

}  // namespace casimir_spin::cli
