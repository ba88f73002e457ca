#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "levycum/rho_alpha.hpp"

namespace levycum {

/// d Gaussian bases mixed by A, all running on one common IG clock
/// (comonotone subordinator).  Used to cross-check the engines on
/// textbook cases the closed forms cover.
struct GaussianCommonClockModel {
  Eigen::MatrixXd mixing;      // n x d
  Eigen::VectorXd mean;        // per-factor drift
  Eigen::VectorXd variance;    // per-factor variance
  double clock_a = 1.0;        // common clock IG(a, b)
  double clock_b = 1.0;
};

/// Everything that determines a simulation; the result is a function of
/// (model, t, num_paths, seed) only, never of num_workers.
struct SimulationPlan {
  std::variant<GaussianCommonClockModel, RhoAlphaNigModel> model;
  double t = 1.0;
  std::int64_t num_paths = 1'000'000;
  std::uint64_t seed = 0;
  int num_workers = 1;
};

/// i.i.d. draws from IG(a, b) in the cumulant convention of
/// ig_cumulant (mean a/b, variance a/b^3); every draw is positive.
std::vector<double> sample_ig(double a, double b, std::int64_t count, std::uint64_t seed);

/// Per-path increments of Y over [0, t]; one row per path, one column
/// per component.  Row p depends only on (seed, p), so any partition of
/// rows across workers reproduces the same matrix.
Eigen::MatrixXd simulate_increments(const SimulationPlan& plan);

struct EmpiricalCumulants {
  std::map<MultiIndex, double> estimates;
  std::map<MultiIndex, double> standard_errors;
};

/// Joint cumulant estimates for all |i| <= max_order from sample joint
/// moments, with batch-means standard errors.  Requires at least 10^4
/// samples and num_batches dividing them into non-trivial batches.
EmpiricalCumulants estimate_cumulants(const Eigen::MatrixXd& samples, int max_order = 4,
                                      int num_batches = 100);

/// Moment/cumulant conversions over multi-indices (both directions are
/// sums over multi-index partitions; the moment-to-cumulant direction
/// carries the Moebius sign (-1)^{l-1} (l-1)!).
std::map<MultiIndex, double> moments_to_cumulants(const std::map<MultiIndex, double>& moments,
                                                  int num_vars, int max_order);
std::map<MultiIndex, double> cumulants_to_moments(const std::map<MultiIndex, double>& cumulants,
                                                  int num_vars, int max_order);

}  // namespace levycum
