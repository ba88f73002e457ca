// Acceptance suite: every release criterion as one pass/fail line.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "levycum/bell_engine.hpp"
#include "levycum/mc_engine.hpp"
#include "levycum/rho_alpha.hpp"
#include "levycum/series.hpp"
#include "levycum/verification.hpp"
#include "test_oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using levycum::MultiIndex;
using levycum::RhoAlphaNigModel;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%d] %-34s %s (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

RhoAlphaNigModel reference_model(double rho12, double a) {
  Eigen::MatrixXd rho(2, 2);
  rho << 1.0, rho12, rho12, 1.0;
  return RhoAlphaNigModel({85.4175, 64.2544}, {0.0248, 0.0335}, {-8.8886, -13.5988}, rho, a);
}

std::vector<double> rho_grid_41() {
  std::vector<double> grid;
  for (int k = 0; k < 41; ++k) grid.push_back(-1.0 + 2.0 * k / 40.0);
  return grid;
}

// ---------------------------------------------------------------- 1
void criterion_partition_combinatorics() {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;

  const std::vector<size_t> classical = {1, 1, 2, 3, 5, 7, 11};
  for (int k = 0; k <= 6 && pass; ++k) {
    if (levycum::enumerate_partitions(MultiIndex{k}).size() != classical[static_cast<size_t>(k)]) {
      pass = false;
      detail = "univariate count mismatch at k=" + std::to_string(k);
    }
  }

  int checked = 0;
  for (int n = 1; n <= 3 && pass; ++n) {
    for (const auto& i : testing_oracles::all_indices(n, 6)) {
      const auto mine = levycum::enumerate_partitions(i);
      const auto oracle = testing_oracles::brute_force_partitions(i);
      ++checked;
      if (mine.size() != oracle.size()) {
        pass = false;
        detail = "count mismatch at " + i.to_string();
        break;
      }
      for (const auto& p : mine) {
        if (oracle.find(testing_oracles::canonical(p)) == oracle.end()) {
          pass = false;
          detail = "unknown partition at " + i.to_string();
          break;
        }
      }
      if (!pass) break;
    }
  }

  const double elapsed = seconds_since(start);
  if (pass && elapsed >= 1.0) {
    pass = false;
    detail = "runtime " + std::to_string(elapsed) + "s over the 1s budget";
  }
  if (pass)
    detail = std::to_string(checked) + " indices vs brute force, " +
             std::to_string(elapsed).substr(0, 5) + "s";
  report(1, "partition_combinatorics", pass, detail);
}

// ---------------------------------------------------------------- 2
void criterion_engine_oracle_equivalence() {
  const auto start = Clock::now();
  testing_oracles::RandomModelFactory factory(20240814);
  double worst = 0.0;
  std::string worst_at = "-";
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = factory.next(6);
    const auto cgf = levycum::subordinated_cgf_series(model, 6);
    for (const auto& i : testing_oracles::all_indices(model.num_components(), 6)) {
      const double engine = levycum::cumulant(model, i);
      const double oracle = cgf.coefficient(i);
      const double gap = testing_oracles::scaled_gap(engine, oracle);
      if (gap > worst) {
        worst = gap;
        worst_at = "model " + std::to_string(trial) + " at " + i.to_string();
      }
    }
  }
  const double elapsed = seconds_since(start);
  bool pass = worst <= 1e-10;
  std::string detail = "max scaled gap " + sci(worst) + " (" + worst_at + "), " +
                       std::to_string(elapsed).substr(0, 5) + "s";
  if (pass && elapsed >= 60.0) {
    pass = false;
    detail = "runtime over the 60s budget: " + std::to_string(elapsed) + "s";
  }
  report(2, "engine_oracle_equivalence", pass, detail);
}

// ---------------------------------------------------------------- 3
void criterion_univariate_closed_forms() {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double mu = -1.0 + 2.0 * u(rng);
    const double s2 = std::pow(0.1 + 0.9 * u(rng), 2);
    const auto clock = levycum::UnivariateCumulants::inverse_gaussian(0.2 + 1.8 * u(rng),
                                                                      0.5 + 1.5 * u(rng));
    const double c1 = clock.cumulant(1), c2 = clock.cumulant(2), c3 = clock.cumulant(3),
                 c4 = clock.cumulant(4);
    const double expected2 = s2 * c1 + mu * mu * c2;
    const double expected3 = mu * mu * mu * c3 + 3.0 * mu * s2 * c2;
    const double expected4 = mu * mu * mu * mu * c4 + 6.0 * mu * mu * s2 * c3 + 3.0 * s2 * s2 * c2;
    const double got2 = levycum::cumulant_univariate(mu, s2, clock, 2);
    const double got3 = levycum::cumulant_univariate(mu, s2, clock, 3);
    const double got4 = levycum::cumulant_univariate(mu, s2, clock, 4);
    for (auto [got, expected] :
         {std::pair{got2, expected2}, {got3, expected3}, {got4, expected4}}) {
      const double scale = std::max({std::abs(expected), std::abs(got), 1e-300});
      worst = std::max(worst, std::abs(got - expected) / scale);
    }
  }
  report(3, "univariate_closed_forms", worst <= 1e-12,
         "max relative error " + sci(worst) + " over 50 draws");
}

// ---------------------------------------------------------------- 4
void criterion_ig_convolution_identity() {
  const auto model = reference_model(0.0, 1.05);
  double worst = 0.0;
  for (double a : {0.1, 1.05, 2.1}) {
    for (int j = 0; j < 2; ++j) {
      const double b = model.inv_sqrt_alpha(j);
      const double alpha = model.alpha(j);
      const double idio_a = 1.0 - a / b;  // 1 - a sqrt(alpha_j) > 0 here
      for (int k = 1; k <= 8; ++k) {
        // cumulants add across the independent sum X_j + alpha_j Z
        const double lhs = levycum::ig_cumulant(idio_a, b, k) +
                           std::pow(alpha, k) * levycum::ig_cumulant(a, 1.0, k);
        const double rhs = levycum::ig_cumulant(1.0, b, k);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));

        // the same through ig_scale: alpha_j Z ~ IG(a sqrt(alpha_j), b)
        const auto [sa, sb] = levycum::ig_scale(a, 1.0, alpha);
        const double scaled = levycum::ig_cumulant(sa, sb, k);
        worst = std::max(worst, std::abs(levycum::ig_cumulant(idio_a, b, k) + scaled - rhs) /
                                    std::abs(rhs));
      }
    }
  }
  report(4, "ig_convolution_identity", worst <= 1e-12,
         "max relative error " + sci(worst) + " for k <= 8, a in {0.1,1.05,2.1}");
}

// ---------------------------------------------------------------- 5
void criterion_structure() {
  bool pass = true;
  std::string detail;
  const std::vector<double> times = {1.0 / 252.0, 21.0 / 252.0, 1.0};
  const auto model = reference_model(0.5, 1.05);

  // time-rate invariance
  double worst_time = 0.0;
  const std::vector<std::pair<MultiIndex, double>> rates = {
      {MultiIndex{1, 1}, 0.0}, {MultiIndex{1, 2}, 0.5}, {MultiIndex{1, 3}, 1.0},
      {MultiIndex{2, 2}, 1.0}};
  for (const auto& [index, rate] : rates) {
    const double reference =
        levycum::normalized_cumulant(model, index, 1.0);  // t^rate = 1 at t = 1
    for (double t : times) {
      const double value = levycum::normalized_cumulant(model, index, t) * std::pow(t, rate);
      worst_time = std::max(worst_time, std::abs(value - reference) / std::abs(reference));
    }
  }
  if (worst_time > 1e-12) {
    pass = false;
    detail = "time-rate drift " + sci(worst_time);
  }

  // polynomial structure in rho over the 41-point grid
  double worst_fit = 0.0;
  if (pass) {
    const auto grid = rho_grid_41();
    const std::vector<std::pair<MultiIndex, int>> fits = {
        {MultiIndex{1, 1}, 1}, {MultiIndex{1, 2}, 1}, {MultiIndex{1, 3}, 1}, {MultiIndex{2, 2}, 2}};
    for (const auto& [index, degree] : fits) {
      std::vector<double> values;
      double scale = 1.0;
      for (double r : grid) {
        values.push_back(levycum::normalized_cumulant(model.with_rho12(r), index, 1.0));
        scale = std::max(scale, std::abs(values.back()));
      }
      Eigen::MatrixXd vandermonde(grid.size(), degree + 1);
      Eigen::VectorXd y(grid.size());
      for (size_t r = 0; r < grid.size(); ++r) {
        double p = 1.0;
        for (int c = 0; c <= degree; ++c) {
          vandermonde(static_cast<int>(r), c) = p;
          p *= grid[r];
        }
        y[static_cast<int>(r)] = values[r];
      }
      const Eigen::VectorXd coef = vandermonde.colPivHouseholderQr().solve(y);
      const double residual = (vandermonde * coef - y).cwiseAbs().maxCoeff() / scale;
      worst_fit = std::max(worst_fit, residual);
    }
    if (worst_fit > 1e-10) {
      pass = false;
      detail = "rho-fit residual " + sci(worst_fit);
    }
  }

  // raw mixed cumulants exactly linear in a
  double worst_ratio = 0.0;
  if (pass) {
    const auto low = model.with_a(0.35);
    for (const auto& i : testing_oracles::all_indices(2, 4)) {
      if (i.support_size() < 2) continue;
      const double hi = levycum::rho_alpha_cumulant(model, i, 1.0);
      const double lo = levycum::rho_alpha_cumulant(low, i, 1.0);
      worst_ratio = std::max(worst_ratio, std::abs(hi / lo - 1.05 / 0.35) / (1.05 / 0.35));
    }
    if (worst_ratio > 1e-12) {
      pass = false;
      detail = "a-linearity ratio error " + sci(worst_ratio);
    }
  }

  if (pass)
    detail = "time drift " + sci(worst_time) + ", fit residual " + sci(worst_fit) +
             ", a-ratio " + sci(worst_ratio);
  report(5, "normalized_cumulant_structure", pass, detail);
}

// ---------------------------------------------------------------- 6
void criterion_maximal_correlation() {
  const auto grid = rho_grid_41();

  auto max_correlation = [&grid](double a) {
    const auto model = reference_model(0.0, a);
    double best = -2.0;
    for (double r : grid)
      best = std::max(best,
                      levycum::normalized_cumulant(model.with_rho12(r), MultiIndex{1, 1}, 1.0));
    return best;
  };

  const double mid = max_correlation(1.05);
  const bool mid_ok = std::abs(mid - 0.5) <= 0.05;

  // at the a = 2.1 boundary the scan must reach the model's own
  // maximum: the correlation at (a_max, rho = 1)
  const auto base = reference_model(0.0, 1.05);
  const double model_max = levycum::normalized_cumulant(
      base.with_a(base.a_max()).with_rho12(1.0), MultiIndex{1, 1}, 1.0);
  const double high = max_correlation(2.1);
  const bool high_ok = std::abs(high - model_max) <= 0.05;

  report(6, "maximal_attainable_correlation", mid_ok && high_ok,
         "max corr(a=1.05) = " + sci(mid) + " vs 0.5; max corr(a=2.1) = " + sci(high) +
             " vs model max " + sci(model_max));
}

// ---------------------------------------------------------------- 7
void criterion_monte_carlo_agreement() {
  const auto start = Clock::now();
  const auto model = reference_model(0.5, 1.05);

  levycum::SimulationPlan plan;
  plan.model = model;
  plan.t = 1.0;
  plan.num_paths = 1'000'000;
  plan.seed = 42;
  plan.num_workers = 4;

  const Eigen::MatrixXd samples = levycum::simulate_increments(plan);
  const auto empirical = levycum::estimate_cumulants(samples, 4);

  bool pass = true;
  std::string detail;
  int checked = 0;
  double worst_sigmas = 0.0;
  for (const auto& i : testing_oracles::all_indices(2, 4)) {
    const double analytic = levycum::rho_alpha_cumulant(model, i, plan.t);
    const double estimate = empirical.estimates.at(i);
    const double se = empirical.standard_errors.at(i);
    const double sigmas = std::abs(analytic - estimate) / se;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    ++checked;
    if (sigmas > 4.0) {
      pass = false;
      detail = i.to_string() + ": analytic " + std::to_string(analytic) + " vs estimate " +
               std::to_string(estimate) + " is " + std::to_string(sigmas) + " SEs away";
      break;
    }
  }
  const double elapsed = seconds_since(start);
  if (pass && elapsed >= 300.0) {
    pass = false;
    detail = "runtime over the 5 min budget";
  }
  if (pass)
    detail = std::to_string(checked) + " cumulants within 4 SE (worst " + sci(worst_sigmas) +
             "), " + std::to_string(elapsed).substr(0, 5) + "s";
  report(7, "monte_carlo_agreement", pass, detail);
}

// ---------------------------------------------------------------- 8
void criterion_scan_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "levycum_acceptance";
  fs::create_directories(dir);

  auto run_scan = [&dir](const std::string& name, int workers) -> std::string {
    const fs::path out = dir / name;
    const std::string command = std::string(LEVYCUM_CLI_PATH) +
                                " scan --param rho --from -1 --to 1 --steps 41 --orders 4" +
                                " --workers " + std::to_string(workers) + " --out " +
                                out.string() + " > /dev/null 2>&1";
    if (std::system(command.c_str()) != 0) return "";
    std::ifstream in(out, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  const std::string first = run_scan("scan_a.csv", 1);
  const std::string second = run_scan("scan_b.csv", 1);
  const std::string parallel = run_scan("scan_c.csv", 4);

  const bool pass = !first.empty() && first == second && first == parallel;
  report(8, "scan_byte_determinism", pass,
         pass ? std::to_string(first.size()) + " bytes identical across runs and workers {1,4}"
              : "outputs differ or scan failed");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_partition_combinatorics();
  criterion_engine_oracle_equivalence();
  criterion_univariate_closed_forms();
  criterion_ig_convolution_identity();
  criterion_structure();
  criterion_maximal_correlation();
  criterion_monte_carlo_agreement();
  criterion_scan_determinism();
  if (failures == 0) {
    std::printf("all criteria passed\n");
    return EXIT_SUCCESS;
  }
  std::printf("%d criteria FAILED\n", failures);
  return EXIT_FAILURE;
}
