#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "casimir_spin/errors.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"
#include "report.hpp"

using namespace casimir_spin;
using namespace casimir_spin::cli;

namespace {

// Write a throwaway config file and return its path.
std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::trunc);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("numbers render with full round-trip precision") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(1e300) == "1.0000000000000001e+300");

  // Rendering then parsing restores the exact bits.
  const double samples[] = {3.141592653589793, -7.0570558139571289e-06,
                            0.33199425645453939, 6.02e23, 5e-324};
  for (double x : samples) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("config files parse every key") {
  const auto path = write_temp("cli_full.cfg",
                               "# geometry\n"
                               "a = 0.5\n"
                               "b = 1.5\n"
                               "c = 2.5\n"
                               "eps = 1.25\n"
                               "eps1 = 4.75\n"
                               "Omega = 0.125   # spin\n"
                               "theta = 0.75\n"
                               "omega = 1.5\n"
                               "Ex = 0.25\n"
                               "Ez = 0.0625\n"
                               "cutoff = 0.375\n"
                               "cutoff.shape = exponential\n"
                               "unit.length = 2\n"
                               "unit.time = 4\n"
                               "unit.c = 0.5\n"
                               "unit.hbar = 8\n"
                               "workers = 3\n"
                               "format = json\n"
                               "out = /tmp/report.json\n"
                               "spectrum.out = /tmp/spectrum.csv\n");
  const RunConfig cfg = load_config_file(path);
  CHECK(cfg.a == 0.5);
  CHECK(cfg.b == 1.5);
  CHECK(cfg.c == 2.5);
  CHECK(cfg.eps == 1.25);
  CHECK(cfg.eps1 == 4.75);
  CHECK(cfg.Omega == 0.125);
  CHECK(cfg.theta == 0.75);
  CHECK(cfg.omega == 1.5);
  CHECK(cfg.Ex == 0.25);
  CHECK(cfg.Ez == 0.0625);
  CHECK(cfg.cutoff == 0.375);
  CHECK(cfg.cutoff_shape == "exponential");
  CHECK(cfg.units.length == 2.0);
  CHECK(cfg.units.time == 4.0);
  CHECK(cfg.units.c == 0.5);
  CHECK(cfg.units.hbar == 8.0);
  CHECK(cfg.workers == 3);
  CHECK(cfg.format == "json");
  CHECK(cfg.out == "/tmp/report.json");
  CHECK(cfg.spectrum_out == "/tmp/spectrum.csv");
  CHECK(cfg.sweep.empty());
  cfg.validate();
}

TEST_CASE("config diagnostics carry path and line number") {
  const auto bad_key = write_temp("cli_badkey.cfg", "a = 1\nbogus = 2\n");
  CHECK_THROWS_WITH_AS(load_config_file(bad_key),
                       doctest::Contains("cli_badkey.cfg:2"), ConfigError);
  CHECK_THROWS_WITH_AS(load_config_file(bad_key), doctest::Contains("bogus"),
                       ConfigError);

  const auto bad_num = write_temp("cli_badnum.cfg", "omega = fast\n");
  CHECK_THROWS_WITH_AS(load_config_file(bad_num),
                       doctest::Contains("cli_badnum.cfg:1"), ConfigError);

  const auto no_value = write_temp("cli_noval.cfg", "theta =\n");
  CHECK_THROWS_AS(load_config_file(no_value), ConfigError);

  const auto no_equals = write_temp("cli_noeq.cfg", "just words\n");
  CHECK_THROWS_AS(load_config_file(no_equals), ConfigError);

  // An unreadable config is a configuration error (the CLI exits 2), not a
  // report-output failure.
  CHECK_THROWS_AS(load_config_file("/nonexistent/nowhere.cfg"), ConfigError);
}

TEST_CASE("sweep axes parse with spacing and defaults") {
  const auto path = write_temp("cli_sweep.cfg",
                               "sweep.1.param = theta\n"
                               "sweep.1.from = 0\n"
                               "sweep.1.to = 1.5\n"
                               "sweep.1.count = 7\n"
                               "sweep.2.param = Omega\n"
                               "sweep.2.from = 1e-3\n"
                               "sweep.2.to = 1e-1\n"
                               "sweep.2.count = 5\n"
                               "sweep.2.spacing = log\n");
  const RunConfig cfg = load_config_file(path);
  REQUIRE(cfg.sweep.size() == 2);
  CHECK(cfg.sweep[0].parameter == "theta");
  CHECK(cfg.sweep[0].from == 0.0);
  CHECK(cfg.sweep[0].to == 1.5);
  CHECK(cfg.sweep[0].count == 7);
  CHECK_FALSE(cfg.sweep[0].log_spacing);
  CHECK(cfg.sweep[1].parameter == "Omega");
  CHECK(cfg.sweep[1].log_spacing);
  cfg.validate();

  // Second axis without the first is rejected.
  const auto orphan = write_temp("cli_orphan.cfg",
                                 "sweep.2.param = Omega\n"
                                 "sweep.2.from = 1\n"
                                 "sweep.2.to = 2\n"
                                 "sweep.2.count = 2\n");
  CHECK_THROWS_AS(load_config_file(orphan), ConfigError);

  // An axis must name its parameter and bounds.
  const auto partial = write_temp("cli_partial.cfg",
                                  "sweep.1.param = theta\n"
                                  "sweep.1.count = 4\n");
  CHECK_THROWS_AS(load_config_file(partial), ConfigError);
}

TEST_CASE("structural validation rejects bad configurations") {
  RunConfig cfg;
  cfg.validate();  // defaults are fine

  RunConfig bad = cfg;
  bad.format = "xml";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.cutoff_shape = "gaussian";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.cutoff = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.workers = -2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.units.hbar = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.sweep = {{"theta", 0.0, 1.0, 3, false},
               {"Omega", 0.1, 1.0, 3, true},
               {"omega", 0.1, 1.0, 3, false}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.sweep = {{"flux", 0.0, 1.0, 3, false}};  // not a numeric parameter
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.sweep = {{"theta", 0.0, 1.0, 0, false}};  // empty grid
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.sweep = {{"Omega", -1.0, 1.0, 3, true}};  // log through zero
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("numeric parameter names map to config fields") {
  RunConfig cfg;
  for (const char* name : {"a", "b", "c", "eps", "eps1", "Omega", "theta",
                           "omega", "Ex", "Ez", "cutoff"}) {
    double* slot = cfg.numeric_slot(name);
    REQUIRE(slot != nullptr);
    *slot = 42.0;
  }
  CHECK(cfg.a == 42.0);
  CHECK(cfg.cutoff == 42.0);
  CHECK(cfg.numeric_slot("format") == nullptr);
  CHECK(cfg.numeric_slot("") == nullptr);
}

TEST_CASE("worker count resolves config, then environment, then hardware") {
  RunConfig cfg;
  cfg.workers = 6;
  CHECK(resolve_workers(cfg) == 6);

  cfg.workers = 0;
  setenv("CASIMIR_SPIN_WORKERS", "4", 1);
  CHECK(resolve_workers(cfg) == 4);

  setenv("CASIMIR_SPIN_WORKERS", "0", 1);
  CHECK_THROWS_AS(resolve_workers(cfg), ConfigError);
  setenv("CASIMIR_SPIN_WORKERS", "many", 1);
  CHECK_THROWS_AS(resolve_workers(cfg), ConfigError);

  unsetenv("CASIMIR_SPIN_WORKERS");
  CHECK(resolve_workers(cfg) >= 1);

  // Explicit config wins over the environment.
  setenv("CASIMIR_SPIN_WORKERS", "4", 1);
  cfg.workers = 2;
  CHECK(resolve_workers(cfg) == 2);
  unsetenv("CASIMIR_SPIN_WORKERS");
}

TEST_CASE("resolved entries reload to the same configuration") {
  RunConfig cfg;
  cfg.a = 0.7;
  cfg.b = 1.3;
  cfg.c = 2.9;
  cfg.eps = 1.1;
  cfg.eps1 = 5.5;
  cfg.Omega = 1e-3;
  cfg.theta = 0.6154797086703874;
  cfg.omega = 1.7;
  cfg.Ex = 0.3;
  cfg.Ez = 0.9;
  cfg.cutoff = 0.45;
  cfg.cutoff_shape = "exponential";
  cfg.units = {2.0, 3.0, 0.25, 1.5};
  cfg.workers = 2;
  cfg.format = "json";
  cfg.out = "/tmp/echo.json";
  cfg.sweep = {{"Omega", 1e-4, 1e-1, 9, true}, {"theta", 0.0, 1.5, 4, false}};

  std::string text;
  for (const auto& [key, value] : resolved_entries(cfg)) {
    text += key + " = " + value + "\n";
  }
  const RunConfig back = load_config_file(write_temp("cli_echo.cfg", text));

  CHECK(back.a == cfg.a);
  CHECK(back.b == cfg.b);
  CHECK(back.c == cfg.c);
  CHECK(back.eps == cfg.eps);
  CHECK(back.eps1 == cfg.eps1);
  CHECK(back.Omega == cfg.Omega);
  CHECK(back.theta == cfg.theta);
  CHECK(back.omega == cfg.omega);
  CHECK(back.Ex == cfg.Ex);
  CHECK(back.Ez == cfg.Ez);
  CHECK(back.cutoff == cfg.cutoff);
  CHECK(back.cutoff_shape == cfg.cutoff_shape);
  CHECK(back.units.length == cfg.units.length);
  CHECK(back.units.time == cfg.units.time);
  CHECK(back.units.c == cfg.units.c);
  CHECK(back.units.hbar == cfg.units.hbar);
  CHECK(back.workers == cfg.workers);
  CHECK(back.format == cfg.format);
  CHECK(back.out == cfg.out);
  REQUIRE(back.sweep.size() == 2);
  CHECK(back.sweep[0].parameter == cfg.sweep[0].parameter);
  CHECK(back.sweep[0].from == cfg.sweep[0].from);
  CHECK(back.sweep[0].to == cfg.sweep[0].to);
  CHECK(back.sweep[0].count == cfg.sweep[0].count);
  CHECK(back.sweep[0].log_spacing == cfg.sweep[0].log_spacing);
  CHECK(back.sweep[1].parameter == cfg.sweep[1].parameter);
  CHECK(back.sweep[1].log_spacing == cfg.sweep[1].log_spacing);
}

TEST_CASE("CSV reports render config comments, results, and checks") {
  Report r;
  r.config = {{"a", "1"}, {"format", "csv"}};
  r.results = {{"gamma", -0.5}, {"ratio", 0.1}};
  r.checks = {{"sign", true, 0.0, 0.0}, {"sum", false, 2e-3, 1e-9}};

  const std::string text = render_csv(r);
  CHECK(text.find("# a = 1\n") != std::string::npos);
  CHECK(text.find("key,value\n") != std::string::npos);
  CHECK(text.find("gamma,-0.5\n") != std::string::npos);
  CHECK(text.find("ratio,0.10000000000000001\n") != std::string::npos);
  CHECK(text.find("check,pass,residual,tolerance\n") != std::string::npos);
  CHECK(text.find("sign,pass,0,0\n") != std::string::npos);
  CHECK(text.find("sum,fail,0.002") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);

  // Without checks the section header is omitted.
  r.checks.clear();
  CHECK(render_csv(r).find("check,pass") == std::string::npos);
}

TEST_CASE("JSON reports parse back with full precision") {
  Report r;
  r.config = {{"a", "1"}, {"theta", "0.75"}};
  r.results = {{"gamma", -7.0570558139571289e-06}};
  r.checks = {{"sign", true, 0.0, 0.0}};

  const auto parsed = nlohmann::json::parse(render_json(r));
  CHECK(parsed["config"]["a"] == "1");
  CHECK(parsed["config"]["theta"] == "0.75");
  CHECK(parsed["results"]["gamma"].get<double>() ==
        -7.0570558139571289e-06);
  CHECK(parsed["checks"].size() == 1);
  CHECK(parsed["checks"][0]["name"] == "sign");
  CHECK(parsed["checks"][0]["pass"].get<bool>());
}

TEST_CASE("reports write to files and fail loudly on bad paths") {
  Report r;
  r.config = {{"a", "1"}};
  r.results = {{"x", 2.0}};

  RunConfig cfg;
  cfg.out = (std::filesystem::temp_directory_path() / "cli_report.csv").string();
  write_report(r, cfg);
  std::ifstream in(cfg.out);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(body == render_csv(r));

  cfg.out = "/nonexistent_dir/report.csv";
  CHECK_THROWS_AS(write_report(r, cfg), IoError);
}
