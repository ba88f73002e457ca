#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levycum/rho_alpha.hpp"

namespace levycum {

struct ScanBlock {
  std::string parameter = "rho";  // rho | a | t
  double from = -1.0;
  double to = 1.0;
  int steps = 41;

  bool operator==(const ScanBlock&) const = default;
  std::vector<double> grid() const;
};

struct OutputBlock {
  std::string path = "scan.csv";
  std::string format = "csv";  // csv | json

  bool operator==(const OutputBlock&) const = default;
};

/// Everything a run needs, read from one JSON file.  The built-in
/// defaults are the calibrated bivariate equity parameter set shipped
/// with the tool; marginal drifts are carried through serialization but
/// never enter dependence computations.
struct RunConfig {
  std::vector<double> gamma;
  std::vector<double> delta;
  std::vector<double> beta;
  Eigen::MatrixXd rho;
  double a = 1.05;
  std::vector<double> drift;

  int orders = 4;
  std::vector<double> times;  // years, 252 trading days
  std::uint64_t seed = 42;
  std::int64_t num_paths = 1'000'000;
  int num_workers = 1;

  std::optional<ScanBlock> scan;
  std::optional<OutputBlock> output;

  static RunConfig defaults();
  static RunConfig from_json_text(const std::string& text);
  static RunConfig load_file(const std::string& path);
  std::string to_json_text() const;

  RhoAlphaNigModel make_model() const;
  bool operator==(const RunConfig& other) const;
};

}  // namespace levycum
