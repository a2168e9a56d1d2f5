#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "oracles.hpp"
#include "output.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace vibecho::cli;
using doctest::Approx;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vibecho_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int cli(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = std::string("\"") + VIBECHO_CLI_PATH + "\" " + args;
  if (!capture.empty()) cmd += " >\"" + capture.string() + "\"";
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("numbers are formatted for exact round trips") {
  CHECK(format_number(0.1) == "1.0000000000000001e-01");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(json_number(INFINITY) == "\"inf\"");
  CHECK(json_string("a\"b\n") == "\"a\\\"b\\n\"");
}

TEST_CASE("configuration defaults") {
  const RunConfig c = resolve(RawConfig{});
  CHECK(c.params.units == VE_UNITS_SI);
  CHECK(c.engine == VE_ENGINE_ANALYTIC);
  CHECK(c.schedule.tau == Approx(4.0 * oracle::kTypicalDephasingTime).epsilon(1e-12));
  CHECK(c.schedule.t0 == c.schedule.tau);
  CHECK(c.schedule.area1 == Approx(std::acos(0.5)));
  CHECK(c.taus.size() == 8);
  CHECK(c.numeric.grid_points == 4096);
}

TEST_CASE("configuration parsing") {
  const RawConfig raw = parse_config_text(R"({"units": "natural", "force": 2.0, "tau": 0.5, "phi": 1.0, "phi2": 0.5,
                                              "engine": "numeric", "taus": [0.2, 0.4]})");
  const RunConfig c = resolve(raw);
  CHECK(c.params.units == VE_UNITS_NATURAL);
  CHECK(c.params.force == 2.0);
  CHECK(c.schedule.area1 == 1.0);
  CHECK(c.schedule.area2 == 0.5);
  CHECK(c.schedule.t0 == 0.5);
  CHECK(c.engine == VE_ENGINE_NUMERIC);
  CHECK(c.taus == std::vector<double>{0.2, 0.4});

  CHECK_THROWS_AS(parse_config_text(R"({"tua": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"tau": "long"})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
  CHECK_THROWS_AS(resolve(parse_config_text(R"({"engine": "magic"})")), ConfigError);
  CHECK_THROWS_AS(resolve(parse_config_text(R"({"grid_points": 1000})")), ConfigError);
  CHECK_THROWS_AS(resolve(parse_config_text(R"({"force": 0})")), ConfigError);  // tau required
  CHECK_THROWS_AS(resolve(parse_config_text(R"({"units": "natural", "mass": 2})")), ConfigError);
  CHECK_THROWS_AS(resolve(parse_config_text(R"({"taus": [0.1, -0.1]})")), ConfigError);
}

TEST_CASE("effective configuration re-parses to the same run") {
  const RunConfig a = resolve(parse_config_text(R"({"phi1": 0.9, "dt": 1e-17})"));
  const std::string text = effective_config_json(a);
  const RunConfig b = resolve(parse_config_text(text));
  CHECK(effective_config_json(b) == text);
  CHECK(nlohmann::json::parse(text)["phi1"].get<double>() == 0.9);
}

TEST_CASE("run writes a deterministic trace") {
  const fs::path dir = scratch("run");
  REQUIRE(cli("run --out \"" + (dir / "a").string() + "\"") == 0);
  REQUIRE(cli("run --out \"" + (dir / "b").string() + "\"") == 0);
  const std::string a = slurp(dir / "a" / "trace.csv");
  CHECK(a == slurp(dir / "b" / "trace.csv"));
  CHECK(a.rfind("t,re_d,im_d,abs_d,ground_pop,excited_pop\n", 0) == 0);
  CHECK(a.find('\r') == std::string::npos);

  // Re-running from the emitted configuration reproduces the trace.
  REQUIRE(cli("run --config \"" + (dir / "a" / "effective_config.json").string() + "\" --out \"" +
              (dir / "c").string() + "\"") == 0);
  CHECK(slurp(dir / "c" / "trace.csv") == a);
}

TEST_CASE("run without pulses gives a silent dipole") {
  const fs::path dir = scratch("zero");
  for (const char* engine : {"analytic", "numeric"}) {
    CAPTURE(engine);
    REQUIRE(cli(std::string("run --phi 0 --engine ") + engine + " --out \"" + dir.string() + "\"") == 0);
    const auto rows = csv_rows(slurp(dir / "trace.csv"));
    REQUIRE(rows.size() > 100);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].size() == 6);
      CHECK(std::stod(rows[i][3]) == 0.0);
    }
  }
}

TEST_CASE("a zero first pulse leaves only the second-pulse free induction") {
  const fs::path dir = scratch("zero1");
  REQUIRE(cli("run --units natural --force 3.079 --tau 0.5 --phi1 0 --out \"" + dir.string() + "\"") == 0);
  const auto rows = csv_rows(slurp(dir / "trace.csv"));
  REQUIRE(rows.size() > 100);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const double s = t - 0.5;
    const double ref = s < 0.0 ? 0.0 : 0.5 * std::sin(std::acos(0.5)) * std::exp(-0.25 * std::pow(3.079 * s, 2));
    CHECK(std::stod(rows[i][3]) == Approx(ref).epsilon(1e-12).scale(1e-300));
  }
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  {
    std::ofstream(dir / "bad.json") << R"({"bogus": 1})";
  }
  CHECK(cli("run --config \"" + (dir / "bad.json").string() + "\" --out \"" + dir.string() + "\"") == 2);
  CHECK(cli("run --config \"" + (dir / "missing.json").string() + "\"") == 2);
  CHECK(cli("params --mass -1") == 2);
  CHECK(cli("frobnicate") == 2);
  // A grid far too small for the run is a numerical failure.
  {
    std::ofstream(dir / "tiny.json") << R"({"engine": "numeric", "grid_points": 64, "momentum_extent": 3.0})";
  }
  CHECK(cli("run --config \"" + (dir / "tiny.json").string() + "\" --out \"" + dir.string() + "\"") == 3);
}

TEST_CASE("params reports both unit systems") {
  const fs::path dir = scratch("params");
  REQUIRE(cli("params", dir / "si.json") == 0);
  const auto si = nlohmann::json::parse(slurp(dir / "si.json"));
  CHECK(si["T"].get<double>() == Approx(oracle::kTypicalDecoherenceTime).epsilon(1e-12));
  CHECK(si["t_phi"].get<double>() == Approx(oracle::kTypicalDephasingTime).epsilon(1e-12));
  CHECK(si["T_over_t_phi"].get<double>() == Approx(oracle::kTypicalRatio).epsilon(1e-12));
  CHECK(si["natural"]["dimensionless_force"].get<double>() == Approx(si["f"].get<double>()).epsilon(1e-12));
  CHECK(si["warnings"].empty());

  // Feeding the natural-unit force back in reproduces f.
  const double f = si["natural"]["dimensionless_force"].get<double>();
  std::ostringstream args;
  args.precision(17);
  args << "params --units natural --force " << f;
  REQUIRE(cli(args.str(), dir / "nat.json") == 0);
  const auto nat = nlohmann::json::parse(slurp(dir / "nat.json"));
  CHECK(std::abs(nat["f"].get<double>() - f) < 1e-12);
  CHECK(nat["si"].is_null());

  REQUIRE(cli("params --force 0", dir / "zero.json") == 0);
  const auto zero = nlohmann::json::parse(slurp(dir / "zero.json"));
  CHECK(zero["T"] == "inf");
  CHECK(zero["t_phi"] == "inf");
  CHECK_FALSE(zero["warnings"].empty());
}

TEST_CASE("scan-tau with the analytic engine") {
  const fs::path dir = scratch("scan");
  REQUIRE(cli("scan-tau --out \"" + dir.string() + "\"") == 0);
  const auto rows = csv_rows(slurp(dir / "scan.csv"));
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == std::vector<std::string>{"tau", "peak", "xi", "xi_analytic"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == rows[i][3]);
  const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
  CHECK(fit["exponent"].get<double>() == Approx(4.0).epsilon(1e-9));
  CHECK(fit["T_fit"].get<double>() == Approx(oracle::kTypicalDecoherenceTime).epsilon(1e-9));
  CHECK(fit["fit_error"].is_null());
  CHECK(fit["failures"].empty());
}

TEST_CASE("compare writes a report") {
  const fs::path dir = scratch("compare");
  {
    std::ofstream(dir / "lin.json") << R"({"units": "natural", "force": 3.079, "tau": 0.05, "t0": 0.05})";
  }
  REQUIRE(cli("compare --config \"" + (dir / "lin.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  const auto r = nlohmann::json::parse(slurp(dir / "compare.json"));
  CHECK(r["sup_error_relative"].get<double>() < 0.01);
  CHECK(r["echo_resolved"].get<bool>());
}
