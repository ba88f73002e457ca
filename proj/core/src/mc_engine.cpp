#include "levycum/mc_engine.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace levycum {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based substream: path p consumes a generator derived from
// (seed, p) alone, so the partition of paths across workers cannot
// change any draw.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path) {
    std::uint64_t s = seed ^ (path * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    state_ = splitmix64(s);
    // decorrelate nearby (seed, path) pairs
    state_ ^= splitmix64(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform on (0, 1); never returns 0
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
  }

  // Michael-Schucany-Haas transformation, stated for the classical
  // (mean, shape) parameterization; x stays positive by construction.
  double inverse_gaussian(double mean, double shape) {
    const double nu = normal();
    const double y = nu * nu;
    const double my = mean * y;
    const double denom = my + std::sqrt(my * my + 4.0 * shape * my);
    const double x = denom > 0.0 ? mean - 2.0 * mean * my / denom : mean;
    const double u = uniform();
    if (u <= mean / (mean + x)) return x;
    return mean * mean / x;
  }

  // IG(a, b) in the cumulant convention: mean a/b, shape a^2.
  double ig(double a, double b) { return inverse_gaussian(a / b, a * a); }

 private:
  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Eigen::MatrixXd covariance_square_root(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw std::invalid_argument("simulate_increments: covariance factorization failed");
  Eigen::VectorXd eigenvalues = solver.eigenvalues();
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  for (int k = 0; k < eigenvalues.size(); ++k) {
    if (eigenvalues[k] < -1e-12 * scale)
      throw std::invalid_argument("simulate_increments: covariance not positive semidefinite");
    eigenvalues[k] = std::max(eigenvalues[k], 0.0);
  }
  return solver.eigenvectors() * eigenvalues.cwiseSqrt().asDiagonal();
}

void run_over_paths(std::int64_t num_paths, int num_workers,
                    const std::function<void(std::int64_t, std::int64_t)>& run_range) {
  const int workers = std::max(1, num_workers);
  if (workers == 1) {
    run_range(0, num_paths);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (num_paths + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = std::min<std::int64_t>(num_paths, w * chunk);
    const std::int64_t end = std::min<std::int64_t>(num_paths, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&run_range, begin, end]() { run_range(begin, end); });
  }
  for (auto& th : pool) th.join();
}

void simulate_rho_alpha(const RhoAlphaNigModel& model, const SimulationPlan& plan,
                        Eigen::MatrixXd& out) {
  const int n = model.num_assets();
  std::vector<double> idio_shape(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double s = 1.0 - model.a() / model.inv_sqrt_alpha(j);
    idio_shape[static_cast<size_t>(j)] = s > 1e-14 ? s : 0.0;
  }
  const Eigen::VectorXd drift = model.common_drift();
  const Eigen::MatrixXd root = covariance_square_root(model.common_covariance());
  const double t = plan.t;

  run_over_paths(plan.num_paths, plan.num_workers, [&](std::int64_t begin, std::int64_t end) {
    Eigen::VectorXd w(n);
    for (std::int64_t p = begin; p < end; ++p) {
      PathRng rng(plan.seed, static_cast<std::uint64_t>(p));
      // X_j(t) ~ IG((1 - a sqrt(alpha_j)) t, alpha_j^{-1/2}); the first
      // parameter carries the time scaling.
      for (int j = 0; j < n; ++j) {
        const double shape = idio_shape[static_cast<size_t>(j)];
        const double x = shape > 0.0 ? rng.ig(shape * t, model.inv_sqrt_alpha(j)) : 0.0;
        out(p, j) = model.mu(j) * x + model.sigma(j) * std::sqrt(x) * rng.normal();
      }
      const double z = rng.ig(model.a() * t, 1.0);
      for (int j = 0; j < n; ++j) w[j] = rng.normal();
      const Eigen::VectorXd common = drift * z + std::sqrt(z) * (root * w);
      for (int j = 0; j < n; ++j) out(p, j) += common[j];
    }
  });
}

void simulate_common_clock(const GaussianCommonClockModel& model, const SimulationPlan& plan,
                           Eigen::MatrixXd& out) {
  const int n = static_cast<int>(model.mixing.rows());
  const int d = static_cast<int>(model.mixing.cols());
  if (model.mean.size() != d || model.variance.size() != d)
    throw std::invalid_argument("simulate_increments: factor parameter length mismatch");
  if (!(model.clock_a > 0.0) || !(model.clock_b > 0.0))
    throw std::invalid_argument("simulate_increments: clock parameters must be positive");
  const double t = plan.t;

  run_over_paths(plan.num_paths, plan.num_workers, [&](std::int64_t begin, std::int64_t end) {
    Eigen::VectorXd z(d);
    for (std::int64_t p = begin; p < end; ++p) {
      PathRng rng(plan.seed, static_cast<std::uint64_t>(p));
      const double s = rng.ig(model.clock_a * t, model.clock_b);
      const double sqrt_s = std::sqrt(s);
      for (int k = 0; k < d; ++k)
        z[k] = model.mean[k] * s + std::sqrt(model.variance[k]) * sqrt_s * rng.normal();
      const Eigen::VectorXd y = model.mixing * z;
      for (int j = 0; j < n; ++j) out(p, j) = y[j];
    }
  });
}

}  // namespace

std::vector<double> sample_ig(double a, double b, std::int64_t count, std::uint64_t seed) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("sample_ig: parameters must be positive");
  if (count < 0) throw std::invalid_argument("sample_ig: negative count");
  std::vector<double> draws(static_cast<size_t>(count));
  for (std::int64_t p = 0; p < count; ++p) {
    PathRng rng(seed, static_cast<std::uint64_t>(p));
    draws[static_cast<size_t>(p)] = rng.ig(a, b);
  }
  return draws;
}

Eigen::MatrixXd simulate_increments(const SimulationPlan& plan) {
  if (plan.num_paths < 1) throw std::invalid_argument("simulate_increments: num_paths must be >= 1");
  if (!(plan.t > 0.0)) throw std::invalid_argument("simulate_increments: t must be positive");

  if (std::holds_alternative<RhoAlphaNigModel>(plan.model)) {
    const auto& model = std::get<RhoAlphaNigModel>(plan.model);
    Eigen::MatrixXd out(plan.num_paths, model.num_assets());
    simulate_rho_alpha(model, plan, out);
    return out;
  }
  const auto& model = std::get<GaussianCommonClockModel>(plan.model);
  Eigen::MatrixXd out(plan.num_paths, model.mixing.rows());
  simulate_common_clock(model, plan, out);
  return out;
}

namespace {

std::vector<MultiIndex> moment_indices(int num_vars, int max_order) {
  std::vector<MultiIndex> out;
  std::vector<int> cursor(static_cast<size_t>(num_vars), 0);
  while (true) {
    MultiIndex i(cursor);
    if (i.order() >= 1 && i.order() <= max_order) out.push_back(i);
    int s = num_vars - 1;
    for (; s >= 0; --s) {
      if (cursor[static_cast<size_t>(s)] < max_order) {
        ++cursor[static_cast<size_t>(s)];
        break;
      }
      cursor[static_cast<size_t>(s)] = 0;
    }
    if (s < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double partition_weight(const MultiIndex& i, const MultiIndexPartition& p) {
  const BigInt w = i.factorial() / (p.factorial() * p.multiplicity_factorial());
  return w.convert_to<double>();
}

}  // namespace

std::map<MultiIndex, double> moments_to_cumulants(const std::map<MultiIndex, double>& moments,
                                                  int num_vars, int max_order) {
  auto moment_at = [&moments](const MultiIndex& j) {
    auto it = moments.find(j);
    if (it == moments.end())
      throw std::invalid_argument("moments_to_cumulants: missing moment at " + j.to_string());
    return it->second;
  };
  std::map<MultiIndex, double> cumulants;
  for (const auto& i : moment_indices(num_vars, max_order)) {
    double sum = 0.0;
    for (const auto& p : enumerate_partitions(i, max_order)) {
      double product = 1.0;
      for (size_t j = 0; j < p.columns.size(); ++j)
        for (int r = 0; r < p.multiplicities[j]; ++r) product *= moment_at(p.columns[j]);
      const int l = p.num_columns();
      const double sign = (l % 2 == 1) ? 1.0 : -1.0;
      sum += sign * factorial(l - 1).convert_to<double>() * partition_weight(i, p) * product;
    }
    cumulants[i] = sum;
  }
  return cumulants;
}

std::map<MultiIndex, double> cumulants_to_moments(const std::map<MultiIndex, double>& cumulants,
                                                  int num_vars, int max_order) {
  auto cumulant_at = [&cumulants](const MultiIndex& j) {
    auto it = cumulants.find(j);
    if (it == cumulants.end())
      throw std::invalid_argument("cumulants_to_moments: missing cumulant at " + j.to_string());
    return it->second;
  };
  std::map<MultiIndex, double> moments;
  for (const auto& i : moment_indices(num_vars, max_order)) {
    double sum = 0.0;
    for (const auto& p : enumerate_partitions(i, max_order)) {
      double product = 1.0;
      for (size_t j = 0; j < p.columns.size(); ++j)
        for (int r = 0; r < p.multiplicities[j]; ++r) product *= cumulant_at(p.columns[j]);
      sum += partition_weight(i, p) * product;
    }
    moments[i] = sum;
  }
  return moments;
}

EmpiricalCumulants estimate_cumulants(const Eigen::MatrixXd& samples, int max_order,
                                      int num_batches) {
  const std::int64_t num_samples = samples.rows();
  const int n = static_cast<int>(samples.cols());
  if (num_samples < 10'000)
    throw std::invalid_argument("estimate_cumulants: insufficient samples (need >= 10^4)");
  if (max_order < 1 || max_order > 8)
    throw std::invalid_argument("estimate_cumulants: max_order out of range");
  if (num_batches < 2 || num_batches > num_samples)
    throw std::invalid_argument("estimate_cumulants: bad batch count");

  const auto indices = moment_indices(n, max_order);
  const size_t num_indices = indices.size();

  // Per-batch monomial sums, accumulated in path order within each
  // batch and merged in batch order: the result does not depend on how
  // batches are scheduled.
  std::vector<std::vector<double>> batch_sums(static_cast<size_t>(num_batches),
                                              std::vector<double>(num_indices, 0.0));
  std::vector<std::int64_t> batch_count(static_cast<size_t>(num_batches), 0);

  std::vector<std::vector<int>> index_components(num_indices);
  for (size_t q = 0; q < num_indices; ++q) index_components[q] = indices[q].components();

  for (std::int64_t b = 0; b < num_batches; ++b) {
    const std::int64_t begin = b * num_samples / num_batches;
    const std::int64_t end = (b + 1) * num_samples / num_batches;
    batch_count[static_cast<size_t>(b)] = end - begin;
    auto& sums = batch_sums[static_cast<size_t>(b)];
    std::vector<double> powers(static_cast<size_t>(n) * static_cast<size_t>(max_order + 1));
    for (std::int64_t p = begin; p < end; ++p) {
      for (int j = 0; j < n; ++j) {
        double* pw = &powers[static_cast<size_t>(j) * static_cast<size_t>(max_order + 1)];
        pw[0] = 1.0;
        for (int q = 1; q <= max_order; ++q) pw[q] = pw[q - 1] * samples(p, j);
      }
      for (size_t q = 0; q < num_indices; ++q) {
        double monomial = 1.0;
        const auto& comp = index_components[q];
        for (int j = 0; j < n; ++j)
          monomial *=
              powers[static_cast<size_t>(j) * static_cast<size_t>(max_order + 1) +
                     static_cast<size_t>(comp[static_cast<size_t>(j)])];
        sums[q] += monomial;
      }
    }
  }

  // Full-sample moments from the ordered batch merge.
  std::map<MultiIndex, double> moments;
  for (size_t q = 0; q < num_indices; ++q) {
    double total = 0.0;
    for (std::int64_t b = 0; b < num_batches; ++b) total += batch_sums[static_cast<size_t>(b)][q];
    moments[indices[q]] = total / static_cast<double>(num_samples);
  }
  const auto cumulants = moments_to_cumulants(moments, n, max_order);

  // Batch-means standard errors from per-batch cumulant estimates.
  std::vector<std::map<MultiIndex, double>> batch_cumulants;
  batch_cumulants.reserve(static_cast<size_t>(num_batches));
  for (std::int64_t b = 0; b < num_batches; ++b) {
    std::map<MultiIndex, double> batch_moments;
    for (size_t q = 0; q < num_indices; ++q)
      batch_moments[indices[q]] = batch_sums[static_cast<size_t>(b)][q] /
                                  static_cast<double>(batch_count[static_cast<size_t>(b)]);
    batch_cumulants.push_back(moments_to_cumulants(batch_moments, n, max_order));
  }

  EmpiricalCumulants result;
  for (const auto& i : indices) {
    double mean = 0.0;
    for (const auto& bc : batch_cumulants) mean += bc.at(i);
    mean /= static_cast<double>(num_batches);
    double ss = 0.0;
    for (const auto& bc : batch_cumulants) {
      const double dev = bc.at(i) - mean;
      ss += dev * dev;
    }
    const double batch_sd = std::sqrt(ss / static_cast<double>(num_batches - 1));
    result.estimates[i] = cumulants.at(i);
    result.standard_errors[i] = batch_sd / std::sqrt(static_cast<double>(num_batches));
  }
  return result;
}

}  // namespace levycum
