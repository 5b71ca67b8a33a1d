// Report assembly and deterministic rendering (CSV and JSON).
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace casimir_spin::cli {

struct CheckRow {
  std::string name;
  bool pass;
  double residual;
  double tolerance;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> config;  // resolved echo
  std::vector<std::pair<std::string, double>> results;
  std::vector<CheckRow> checks;  // verify only
};

std::string render_csv(const Report& r);
std::string render_json(const Report& r);

// Render in cfg.format and write to cfg.out (stdout when empty).
void write_report(const Report& r, const RunConfig& cfg);

// Bare CSV table (config comment lines, header, rows) for sweep output and
// the sampled vacuum integrand.
void write_table(const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& config,
                 const std::string& header, const std::vector<std::string>& rows);

}  // namespace casimir_spin::cli
