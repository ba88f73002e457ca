#include <doctest.h>

#include <sstream>

#include "levycum/config.hpp"
#include "levycum/scan_output.hpp"
#include "levycum/verification.hpp"

using levycum::RunConfig;

TEST_CASE("default config carries the calibrated bivariate set") {
  const RunConfig c = RunConfig::defaults();
  CHECK(c.gamma == std::vector<double>{85.4175, 64.2544});
  CHECK(c.delta == std::vector<double>{0.0248, 0.0335});
  CHECK(c.beta == std::vector<double>{-8.8886, -13.5988});
  CHECK(c.drift == std::vector<double>{0.0027, 0.0074});
  CHECK(c.a == 1.05);
  CHECK(c.rho(0, 1) == 0.5);
  CHECK(c.times.size() == 3);
  CHECK(c.times[0] == doctest::Approx(1.0 / 252.0));
  CHECK_NOTHROW(c.make_model());
}

TEST_CASE("config round-trips through JSON") {
  RunConfig c = RunConfig::defaults();
  levycum::ScanBlock scan;
  scan.parameter = "a";
  scan.from = 0.1;
  scan.to = 2.1;
  scan.steps = 5;
  c.scan = scan;
  levycum::OutputBlock out;
  out.path = "table.json";
  out.format = "json";
  c.output = out;

  const std::string text = RunConfig(c).to_json_text();
  const RunConfig parsed = RunConfig::from_json_text(text);
  CHECK(parsed == c);
  // and a second round trip is byte-stable
  CHECK(parsed.to_json_text() == text);
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(RunConfig::from_json_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::from_json_text("{}"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::load_file("/nonexistent/config.json"), std::invalid_argument);

  RunConfig c = RunConfig::defaults();
  c.orders = 1;
  CHECK_THROWS_AS(RunConfig::from_json_text(c.to_json_text()), std::invalid_argument);

  // non-PSD rho caught at model construction
  RunConfig bad = RunConfig::defaults();
  bad.rho(0, 1) = 1.2;
  bad.rho(1, 0) = 1.2;
  CHECK_THROWS_AS(bad.make_model(), std::invalid_argument);
}

TEST_CASE("scan grid construction") {
  levycum::ScanBlock block;
  block.from = -1.0;
  block.to = 1.0;
  block.steps = 41;
  const auto grid = block.grid();
  REQUIRE(grid.size() == 41);
  CHECK(grid.front() == -1.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[20] == doctest::Approx(0.0));

  block.steps = 1;
  CHECK(block.grid() == std::vector<double>{-1.0});
}

TEST_CASE("number formatting: shortest round-trip capped at 12 digits") {
  CHECK(levycum::format_significant(1.0) == "1");
  CHECK(levycum::format_significant(0.5) == "0.5");
  CHECK(levycum::format_significant(-0.25) == "-0.25");
  CHECK(levycum::format_significant(1e-5) == "1e-05");
  // 1/252 needs 17 digits to round-trip; the cap wins
  CHECK(levycum::format_significant(1.0 / 252.0) == "0.00396825396825");
  // values that do round-trip shortly stay short
  CHECK(levycum::format_significant(0.1) == "0.1");
  // parsing back never moves by more than half a step in the 12th
  // significant digit
  const double v = 0.00010286587963712345;
  const double back = std::strtod(levycum::format_significant(v).c_str(), nullptr);
  CHECK(std::abs(back - v) <= 5e-12 * std::abs(v));
}

TEST_CASE("scan rows: flattening, sorting, and both writers") {
  const RunConfig c = RunConfig::defaults();
  const auto model = c.make_model();
  const auto points =
      levycum::scan(model, levycum::ScanParameter::Rho12, {0.5, -0.5}, 4, {1.0, 0.5}, 1);
  const auto rows = levycum::scan_rows(levycum::ScanParameter::Rho12, points);
  REQUIRE(rows.size() == 2 * 2 * 6);

  // sorted by (param_value, t, i, j)
  for (size_t k = 1; k < rows.size(); ++k) {
    const auto key = [](const levycum::ScanRow& r) {
      return std::make_tuple(r.param_value, r.t, r.i, r.j);
    };
    CHECK(key(rows[k - 1]) < key(rows[k]));
  }

  std::ostringstream csv;
  levycum::write_scan_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("param_name,param_value,t,i,j,raw,normalized\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 24);

  std::ostringstream json;
  levycum::write_scan_json(json, rows);
  CHECK(json.str().front() == '[');
  CHECK(json.str().find("\"param_name\": \"rho\"") != std::string::npos);
}

TEST_CASE("verification battery passes on the default model") {
  const RunConfig c = RunConfig::defaults();
  levycum::VerifyOptions options;
  options.orders = 4;
  options.times = c.times;
  options.num_paths = 1'000;  // below the MC floor: inconclusive, not failing
  options.seed = c.seed;
  const auto results = levycum::run_verification(c.make_model(), options);
  CHECK(levycum::all_passed(results));
  bool saw_inconclusive = false;
  for (const auto& r : results)
    if (r.status == levycum::CheckResult::Status::Inconclusive) saw_inconclusive = true;
  CHECK(saw_inconclusive);
}
