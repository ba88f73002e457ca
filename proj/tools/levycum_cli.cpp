// Command line front end: single cumulants, parameter scans, the
// verification battery, and partition dumps.  Exit codes: 0 success,
// 1 input error, 2 verification failure, 3 capacity error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levycum/bell_engine.hpp"
#include "levycum/config.hpp"
#include "levycum/scan_output.hpp"
#include "levycum/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitCapacityError = 3;

levycum::MultiIndex parse_index(const std::string& text) {
  std::vector<int> components;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const int value = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("index: bad component '" + item + "'");
    components.push_back(value);
  }
  if (components.empty()) throw std::invalid_argument("index: empty");
  return levycum::MultiIndex(components);
}

levycum::RunConfig load_config(const std::string& path) {
  if (path.empty()) return levycum::RunConfig::defaults();
  return levycum::RunConfig::load_file(path);
}

int cmd_cumulant(const std::string& config_path, const std::string& index_text, double t) {
  const levycum::RunConfig config = load_config(config_path);
  const levycum::RhoAlphaNigModel model = config.make_model();
  const levycum::MultiIndex index = parse_index(index_text);
  const double raw = levycum::rho_alpha_cumulant(model, index, t);
  std::cout << "raw " << levycum::format_significant(raw) << '\n';
  if (index.order() >= 2) {
    const double normalized = levycum::normalized_cumulant(model, index, t);
    std::cout << "normalized " << levycum::format_significant(normalized) << '\n';
  }
  return kExitOk;
}

int cmd_scan(const std::string& config_path, std::string param, double from, double to, int steps,
             int orders, std::string out_path, std::string format, int workers, bool have_range) {
  levycum::RunConfig config = load_config(config_path);
  if (!param.empty()) {
    if (!have_range) throw std::invalid_argument("scan: --param requires --from/--to/--steps");
    if (steps < 1) throw std::invalid_argument("scan: --steps must be >= 1");
    levycum::ScanBlock block;
    block.parameter = param;
    block.from = from;
    block.to = to;
    block.steps = steps;
    config.scan = block;
  }
  if (!config.scan) throw std::invalid_argument("scan: no scan block in config and no --param");
  if (orders > 0) config.orders = orders;
  if (workers > 0) config.num_workers = workers;
  levycum::OutputBlock out = config.output.value_or(levycum::OutputBlock{});
  if (!out_path.empty()) out.path = out_path;
  if (!format.empty()) out.format = format;
  if (out.format != "csv" && out.format != "json")
    throw std::invalid_argument("scan: format must be csv or json");

  const levycum::RhoAlphaNigModel model = config.make_model();
  const levycum::ScanParameter parameter =
      levycum::scan_parameter_from_string(config.scan->parameter);
  const std::vector<double> grid = config.scan->grid();
  const auto points = levycum::scan(model, parameter, grid, config.orders, config.times,
                                    config.num_workers);
  const auto rows = levycum::scan_rows(parameter, points);

  std::ofstream os(out.path, std::ios::binary);
  if (!os) throw std::invalid_argument("scan: cannot write '" + out.path + "'");
  if (out.format == "csv")
    levycum::write_scan_csv(os, rows);
  else
    levycum::write_scan_json(os, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out.path << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& config_path, std::int64_t paths, std::int64_t seed,
               int workers) {
  levycum::RunConfig config = load_config(config_path);
  if (paths > 0) config.num_paths = paths;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (workers > 0) config.num_workers = workers;

  const levycum::RhoAlphaNigModel model = config.make_model();
  levycum::VerifyOptions options;
  options.orders = config.orders;
  options.times = config.times;
  options.num_paths = config.num_paths;
  options.seed = config.seed;
  options.num_workers = config.num_workers;

  const auto results = levycum::run_verification(model, options);
  for (const auto& r : results) {
    const char* status = r.status == levycum::CheckResult::Status::Pass           ? "pass"
                         : r.status == levycum::CheckResult::Status::Inconclusive ? "inconclusive"
                                                                                  : "FAIL";
    std::cout << "check " << r.name << " ... " << status << " (" << r.detail << ")\n";
  }
  if (!levycum::all_passed(results)) {
    std::cout << "verification FAILED\n";
    return kExitVerificationFailure;
  }
  std::cout << "verification passed\n";
  return kExitOk;
}

int cmd_partitions(const std::string& index_text, bool p2_only) {
  const levycum::MultiIndex index = parse_index(index_text);
  const auto partitions = p2_only ? levycum::enumerate_p2_partitions(index)
                                  : levycum::enumerate_partitions(index);
  std::cout << "partitions of " << index.to_string() << ": " << partitions.size() << '\n';
  for (const auto& p : partitions) std::cout << "  " << p.to_string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint cumulants of subordinated Levy processes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string index_text;
  double t = 1.0;

  auto* cumulant = app.add_subcommand("cumulant", "Print one raw and normalized cumulant");
  cumulant->add_option("--config", config_path, "JSON config file (defaults built in)");
  cumulant->add_option("--index", index_text, "Multi-index, e.g. 1,1")->required();
  cumulant->add_option("--t", t, "Time in years")->default_val(1.0);

  std::string param;
  double from = 0.0, to = 0.0;
  int steps = 0;
  int orders = 0;
  std::string out_path;
  std::string format;
  int workers = 0;

  auto* scan = app.add_subcommand("scan", "Scan a parameter and write a long-format table");
  scan->add_option("--config", config_path, "JSON config file (defaults built in)");
  scan->add_option("--param", param, "One of rho, a, t");
  auto* from_opt = scan->add_option("--from", from, "Grid start");
  scan->add_option("--to", to, "Grid end");
  scan->add_option("--steps", steps, "Grid size");
  scan->add_option("--orders", orders, "Max total cumulant order");
  scan->add_option("--out", out_path, "Output file path");
  scan->add_option("--format", format, "csv or json");
  scan->add_option("--workers", workers, "Worker threads for the grid");

  std::int64_t paths = 0;
  std::int64_t seed = -1;

  auto* verify = app.add_subcommand("verify", "Run the verification battery");
  verify->add_option("--config", config_path, "JSON config file (defaults built in)");
  verify->add_option("--paths", paths, "Monte Carlo paths");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--workers", workers, "Worker threads");

  bool p2_only = false;
  auto* partitions = app.add_subcommand("partitions", "Dump the partitions of a multi-index");
  partitions->add_option("--index", index_text, "Multi-index, e.g. 2,1")->required();
  partitions->add_flag("--p2", p2_only, "Columns of order <= 2 only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cumulant->parsed()) return cmd_cumulant(config_path, index_text, t);
    if (scan->parsed())
      return cmd_scan(config_path, param, from, to, steps, orders, out_path, format, workers,
                      from_opt->count() > 0);
    if (verify->parsed()) return cmd_verify(config_path, paths, seed, workers);
    if (partitions->parsed()) return cmd_partitions(index_text, p2_only);
  } catch (const levycum::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacityError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
