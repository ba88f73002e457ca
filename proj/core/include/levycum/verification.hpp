#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levycum/rho_alpha.hpp"
#include "levycum/series.hpp"

namespace levycum {

/// Truncated cgf of the model built by series composition of the
/// additive split; the independent route the closed forms are checked
/// against.
TruncatedSeries rho_alpha_cgf_series(const RhoAlphaNigModel& model, int max_total_degree);

struct CheckResult {
  enum class Status { Pass, Fail, Inconclusive };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

struct VerifyOptions {
  int orders = 4;
  std::vector<double> times = {1.0 / 252.0, 21.0 / 252.0, 1.0};
  std::int64_t num_paths = 1'000'000;
  std::uint64_t seed = 42;
  int num_workers = 1;
  int rho_grid_points = 41;
};

/// The full verification battery for one model: closed forms against
/// the series oracle, against Monte Carlo, and the structural
/// invariants (time scaling, rho polynomial structure, marginal
/// invariance, linearity in a).  MC checks come back Inconclusive when
/// the sample is too small to resolve the comparison.
std::vector<CheckResult> run_verification(const RhoAlphaNigModel& model,
                                          const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace levycum
