#include "levycum/rho_alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "levycum/bell_engine.hpp"

namespace levycum {

namespace {

// Degeneracy threshold for 1 - a sqrt(alpha_j); values this close to
// zero are the boundary clock.
constexpr double kDegenerateClock = 1e-14;

void validate_correlation_matrix(const Eigen::MatrixXd& rho, int n) {
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("RhoAlphaNigModel: rho must be n x n");
  for (int i = 0; i < n; ++i) {
    if (std::abs(rho(i, i) - 1.0) > 1e-12)
      throw std::invalid_argument("RhoAlphaNigModel: rho diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      if (std::abs(rho(i, j) - rho(j, i)) > 1e-12)
        throw std::invalid_argument("RhoAlphaNigModel: rho must be symmetric");
      if (rho(i, j) < -1.0 - 1e-12 || rho(i, j) > 1.0 + 1e-12)
        throw std::invalid_argument("RhoAlphaNigModel: rho entries must lie in [-1, 1]");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
  if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("RhoAlphaNigModel: rho must be positive semidefinite");
}

}  // namespace

RhoAlphaNigModel::RhoAlphaNigModel(std::vector<double> gamma, std::vector<double> delta,
                                   std::vector<double> beta, Eigen::MatrixXd rho, double a)
    : n_(static_cast<int>(gamma.size())),
      gamma_(std::move(gamma)),
      delta_(std::move(delta)),
      beta_(std::move(beta)),
      rho_(std::move(rho)),
      a_(a) {
  if (n_ < 1) throw std::invalid_argument("RhoAlphaNigModel: needs at least one asset");
  if (static_cast<int>(delta_.size()) != n_ || static_cast<int>(beta_.size()) != n_)
    throw std::invalid_argument("RhoAlphaNigModel: gamma/delta/beta length mismatch");
  for (int j = 0; j < n_; ++j) {
    if (!(gamma_[static_cast<size_t>(j)] > 0.0))
      throw std::invalid_argument("RhoAlphaNigModel: gamma must be positive");
    if (!(delta_[static_cast<size_t>(j)] > 0.0))
      throw std::invalid_argument("RhoAlphaNigModel: delta must be positive");
    if (!(std::abs(beta_[static_cast<size_t>(j)]) < gamma_[static_cast<size_t>(j)]))
      throw std::invalid_argument("RhoAlphaNigModel: |beta| must be below gamma");
  }
  validate_correlation_matrix(rho_, n_);

  mu_.resize(static_cast<size_t>(n_));
  sigma_.resize(static_cast<size_t>(n_));
  alpha_.resize(static_cast<size_t>(n_));
  inv_sqrt_alpha_.resize(static_cast<size_t>(n_));
  a_max_ = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_; ++j) {
    const double g = gamma_[static_cast<size_t>(j)];
    const double d = delta_[static_cast<size_t>(j)];
    const double b = beta_[static_cast<size_t>(j)];
    mu_[static_cast<size_t>(j)] = b * d * d;
    sigma_[static_cast<size_t>(j)] = d;
    const double isa = d * std::sqrt(g * g - b * b);  // alpha_j^{-1/2}
    inv_sqrt_alpha_[static_cast<size_t>(j)] = isa;
    alpha_[static_cast<size_t>(j)] = 1.0 / (isa * isa);
    a_max_ = std::min(a_max_, isa);
  }
  if (!(a_ > 0.0) || a_ > a_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("RhoAlphaNigModel: a must lie in (0, a_max], a_max = " +
                                std::to_string(a_max_));
}

UnivariateCumulants RhoAlphaNigModel::idiosyncratic_clock(int j) const {
  const double isa = inv_sqrt_alpha_[static_cast<size_t>(j)];
  const double shape = 1.0 - a_ / isa;  // 1 - a sqrt(alpha_j)
  if (shape <= kDegenerateClock) return UnivariateCumulants::zero();
  return UnivariateCumulants::inverse_gaussian(shape, isa);
}

UnivariateCumulants RhoAlphaNigModel::common_clock() const {
  return UnivariateCumulants::inverse_gaussian(a_, 1.0);
}

Eigen::VectorXd RhoAlphaNigModel::common_drift() const {
  Eigen::VectorXd drift(n_);
  for (int j = 0; j < n_; ++j)
    drift[j] = mu_[static_cast<size_t>(j)] * alpha_[static_cast<size_t>(j)];
  return drift;
}

Eigen::MatrixXd RhoAlphaNigModel::common_covariance() const {
  Eigen::MatrixXd cov(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      cov(i, j) = rho_(i, j) * sigma_[static_cast<size_t>(i)] * sigma_[static_cast<size_t>(j)] *
                  std::sqrt(alpha_[static_cast<size_t>(i)] * alpha_[static_cast<size_t>(j)]);
  return cov;
}

RhoAlphaNigModel RhoAlphaNigModel::with_a(double a) const {
  return RhoAlphaNigModel(gamma_, delta_, beta_, rho_, a);
}

RhoAlphaNigModel RhoAlphaNigModel::with_rho12(double rho12) const {
  if (n_ != 2)
    throw std::invalid_argument("RhoAlphaNigModel: rho12 scan requires a bivariate model");
  Eigen::MatrixXd rho = rho_;
  rho(0, 1) = rho12;
  rho(1, 0) = rho12;
  return RhoAlphaNigModel(gamma_, delta_, beta_, rho, a_);
}

namespace {

// f_i of the common-clock part: the univariate Bell sum over order-<=2
// partitions with coefficients from drift mu^rho and covariance Sigma^rho.
double common_part_coefficient(const RhoAlphaNigModel& model, const MultiIndex& i,
                               int order_cap) {
  const Eigen::VectorXd drift = model.common_drift();
  const Eigen::MatrixXd cov = model.common_covariance();
  const UnivariateCumulants clock = model.common_clock();

  auto inner = [&](const MultiIndex& column) -> double {
    const int order = column.order();
    if (order > 2) return 0.0;
    int first = -1, second = -1;
    for (int m = 0; m < column.dimension(); ++m) {
      if (column[m] == 0) continue;
      if (first < 0)
        first = m;
      else
        second = m;
    }
    if (order == 1) return drift[first];
    if (second < 0) return cov(first, first);
    return cov(first, second);
  };

  const BigInt i_factorial = i.factorial();
  double sum = 0.0;
  for (const auto& p : enumerate_p2_partitions(i, order_cap)) {
    if (p.columns.empty()) continue;
    double g_product = 1.0;
    for (size_t j = 0; j < p.columns.size(); ++j) {
      const double g = inner(p.columns[j]);
      if (g == 0.0) {
        g_product = 0.0;
        break;
      }
      for (int r = 0; r < p.multiplicities[j]; ++r) g_product *= g;
    }
    if (g_product == 0.0) continue;
    const BigInt prefactor = i_factorial / (p.factorial() * p.multiplicity_factorial());
    sum += prefactor.convert_to<double>() * clock.cumulant(p.num_columns()) * g_product;
  }
  return sum;
}

}  // namespace

double rho_alpha_cumulant(const RhoAlphaNigModel& model, const MultiIndex& i, double t,
                          int order_cap) {
  if (i.dimension() != model.num_assets())
    throw std::invalid_argument("rho_alpha_cumulant: index dimension != number of assets");
  if (i.order() < 1) throw std::invalid_argument("rho_alpha_cumulant: order must be >= 1");
  if (i.order() > order_cap)
    throw CapacityError("rho_alpha_cumulant: total order exceeds cap");
  if (!(t > 0.0)) throw std::invalid_argument("rho_alpha_cumulant: t must be positive");

  double value = common_part_coefficient(model, i, order_cap);
  if (i.support_size() == 1) {
    for (int j = 0; j < i.dimension(); ++j) {
      if (i[j] == 0) continue;
      value += cumulant_univariate(model.mu(j), model.sigma(j) * model.sigma(j),
                                   model.idiosyncratic_clock(j), i[j], order_cap);
    }
  }
  return t * value;
}

double normalized_cumulant(const RhoAlphaNigModel& model, const MultiIndex& i, double t,
                           int order_cap) {
  if (i.order() < 2)
    throw std::invalid_argument("normalized_cumulant: defined for total order >= 2");
  double denom = 1.0;
  for (int j = 0; j < i.dimension(); ++j) {
    if (i[j] == 0) continue;
    const double variance = rho_alpha_cumulant(model, MultiIndex::unit(i.dimension(), j) +
                                                          MultiIndex::unit(i.dimension(), j),
                                               t, order_cap);
    if (!(variance > 0.0))
      throw std::invalid_argument("normalized_cumulant: marginal variance must be positive");
    denom *= std::pow(variance, 0.5 * i[j]);
  }
  return rho_alpha_cumulant(model, i, t, order_cap) / denom;
}

std::string to_string(ScanParameter p) {
  switch (p) {
    case ScanParameter::Rho12:
      return "rho";
    case ScanParameter::CommonA:
      return "a";
    case ScanParameter::Time:
      return "t";
  }
  return "?";
}

ScanParameter scan_parameter_from_string(const std::string& name) {
  if (name == "rho") return ScanParameter::Rho12;
  if (name == "a") return ScanParameter::CommonA;
  if (name == "t") return ScanParameter::Time;
  throw std::invalid_argument("unknown scan parameter '" + name + "' (expected rho, a or t)");
}

namespace {

std::vector<MultiIndex> mixed_indices(int n, int max_order) {
  std::vector<MultiIndex> out;
  std::vector<int> cursor(static_cast<size_t>(n), 0);
  while (true) {
    MultiIndex i(cursor);
    if (i.order() <= max_order && i.support_size() >= 2) out.push_back(i);
    int s = n - 1;
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

}  // namespace

std::vector<ScanPoint> scan(const RhoAlphaNigModel& base, ScanParameter parameter,
                            const std::vector<double>& grid, int max_order,
                            const std::vector<double>& times, int num_workers, int order_cap) {
  if (grid.empty()) throw std::invalid_argument("scan: empty grid");
  if (times.empty() && parameter != ScanParameter::Time)
    throw std::invalid_argument("scan: empty time list");
  if (max_order < 2) throw std::invalid_argument("scan: max_order must be >= 2");

  // Validate every grid point before computing anything; a bad point
  // reports its position and no partial results escape.
  std::vector<RhoAlphaNigModel> models;
  models.reserve(grid.size());
  std::vector<std::vector<double>> point_times(grid.size());
  for (size_t g = 0; g < grid.size(); ++g) {
    try {
      switch (parameter) {
        case ScanParameter::Rho12:
          models.push_back(base.with_rho12(grid[g]));
          point_times[g] = times;
          break;
        case ScanParameter::CommonA:
          models.push_back(base.with_a(grid[g]));
          point_times[g] = times;
          break;
        case ScanParameter::Time:
          if (!(grid[g] > 0.0)) throw std::invalid_argument("time must be positive");
          models.push_back(base);
          point_times[g] = {grid[g]};
          break;
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("scan: grid point " + std::to_string(g) + " (value " +
                                  std::to_string(grid[g]) + ") invalid: " + e.what());
    }
  }

  const auto indices = mixed_indices(base.num_assets(), max_order);
  std::vector<ScanPoint> points(grid.size());

  auto evaluate_point = [&](size_t g) {
    ScanPoint point;
    point.value = grid[g];
    std::vector<double> ts = point_times[g];
    std::sort(ts.begin(), ts.end());
    for (double t : ts) {
      for (const auto& index : indices) {
        CumulantEntry entry;
        entry.index = index;
        entry.t = t;
        entry.raw = rho_alpha_cumulant(models[g], index, t, order_cap);
        entry.normalized = normalized_cumulant(models[g], index, t, order_cap);
        point.table.entries.push_back(std::move(entry));
      }
    }
    points[g] = std::move(point);
  };

  const int workers = std::max(1, num_workers);
  if (workers == 1 || grid.size() == 1) {
    for (size_t g = 0; g < grid.size(); ++g) evaluate_point(g);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (size_t g = static_cast<size_t>(w); g < grid.size(); g += static_cast<size_t>(workers))
          evaluate_point(g);
      });
    }
    for (auto& th : pool) th.join();
  }
  return points;
}

}  // namespace levycum
