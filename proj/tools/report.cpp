#include "report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "casimir_spin/errors.hpp"
#include "json.hpp"

namespace casimir_spin::cli {

std::string render_csv(const Report& r) {
  std::ostringstream os;
  for (const auto& [key, value] : r.config) {
    os << "# " << key << " = " << value << '\n';
  }
  os << "key,value\n";
  for (const auto& [key, value] : r.results) {
    os << key << ',' << format_double(value) << '\n';
  }
  if (!r.checks.empty()) {
    os << "check,pass,residual,tolerance\n";
    for (const CheckRow& c : r.checks) {
      os << c.name << ',' << (c.pass ? "pass" : "fail") << ','
         << format_double(c.residual) << ',' << format_double(c.tolerance)
         << '\n';
    }
  }
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  auto& config = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.config) config[key] = value;
  auto& results = j["results"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.results) results[key] = value;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const CheckRow& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance}});
  }
  return j.dump(2) + "\n";
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open output file");
  out << text;
  out.flush();
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace

void write_report(const Report& r, const RunConfig& cfg) {
  write_text(cfg.out, cfg.format == "json" ? render_json(r) : render_csv(r));
}

void write_table(const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& config,
                 const std::string& header, const std::vector<std::string>& rows) {
  std::ostringstream os;
  for (const auto& [key, value] : config) {
    os << "# " << key << " = " << value << '\n';
  }
  os << header << '\n';
  for (const std::string& row : rows) os << row << '\n';
  write_text(path, os.str());
}

}  // namespace casimir_spin::cli
