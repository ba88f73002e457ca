#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levycum/cumulants.hpp"
#include "levycum/multiindex.hpp"

namespace levycum {

/// Asset returns as a superposition of an idiosyncratic subordinated
/// Brownian part and a common-clock correlated Brownian part,
/// specialized so that every marginal is NIG(gamma_j, delta_j, beta_j):
///
///   Y_j(t) = B_j(X_j(t)) + B^rho_j(Z(t)),
///
/// with X_j ~ IG(1 - a sqrt(alpha_j), alpha_j^{-1/2}), Z ~ IG(a, 1),
/// B_j Brownian with drift mu_j = beta_j delta_j^2 and volatility
/// sigma_j = delta_j, and B^rho Brownian with drift mu_j alpha_j and
/// covariance rho_ij sigma_i sigma_j sqrt(alpha_i alpha_j).
class RhoAlphaNigModel {
 public:
  RhoAlphaNigModel(std::vector<double> gamma, std::vector<double> delta, std::vector<double> beta,
                   Eigen::MatrixXd rho, double a);

  int num_assets() const { return n_; }
  double a() const { return a_; }
  /// Largest admissible a: min_j alpha_j^{-1/2}; at the boundary the
  /// slowest idiosyncratic clock degenerates to zero.
  double a_max() const { return a_max_; }

  double gamma(int j) const { return gamma_[static_cast<size_t>(j)]; }
  double delta(int j) const { return delta_[static_cast<size_t>(j)]; }
  double beta(int j) const { return beta_[static_cast<size_t>(j)]; }
  double mu(int j) const { return mu_[static_cast<size_t>(j)]; }
  double sigma(int j) const { return sigma_[static_cast<size_t>(j)]; }
  double alpha(int j) const { return alpha_[static_cast<size_t>(j)]; }
  double inv_sqrt_alpha(int j) const { return inv_sqrt_alpha_[static_cast<size_t>(j)]; }
  const Eigen::MatrixXd& rho() const { return rho_; }
  double rho12() const { return rho_(0, 1); }

  /// Time-one law of X_j; the zero subordinator at the a = a_max boundary.
  UnivariateCumulants idiosyncratic_clock(int j) const;
  /// Time-one law of Z: IG(a, 1).
  UnivariateCumulants common_clock() const;
  /// Drift of B^rho: (mu_1 alpha_1, ..., mu_n alpha_n).
  Eigen::VectorXd common_drift() const;
  /// Covariance of B^rho: rho_ij sigma_i sigma_j sqrt(alpha_i alpha_j).
  Eigen::MatrixXd common_covariance() const;

  RhoAlphaNigModel with_a(double a) const;
  RhoAlphaNigModel with_rho12(double rho12) const;  // n = 2 only

 private:
  int n_;
  std::vector<double> gamma_, delta_, beta_;
  Eigen::MatrixXd rho_;
  double a_;
  std::vector<double> mu_, sigma_, alpha_, inv_sqrt_alpha_;
  double a_max_;
};

/// c_i(Y(t)) = t * c_i(Y(1)) with c_i(Y) from the additive cgf split:
/// the common-clock coefficient f_i, plus the idiosyncratic g_{j,i}
/// when i is concentrated on one component.
double rho_alpha_cumulant(const RhoAlphaNigModel& model, const MultiIndex& i, double t,
                          int order_cap = kDefaultOrderCap);

/// c_i(Y(t)) / prod_j c_2(Y_j(t))^{i_j / 2}.  Defined for |i| >= 2.
double normalized_cumulant(const RhoAlphaNigModel& model, const MultiIndex& i, double t,
                           int order_cap = kDefaultOrderCap);

struct CumulantEntry {
  MultiIndex index;
  double t = 0.0;
  double raw = 0.0;
  std::optional<double> normalized;  // absent when |i| < 2
};

struct CumulantTable {
  std::vector<CumulantEntry> entries;  // sorted by (t, index)
};

enum class ScanParameter { Rho12, CommonA, Time };

std::string to_string(ScanParameter p);
ScanParameter scan_parameter_from_string(const std::string& name);

struct ScanPoint {
  double value = 0.0;
  CumulantTable table;
};

/// One table per grid value, holding every genuinely mixed index with
/// total order <= max_order at each requested time.  The whole grid is
/// validated before any evaluation; grid points are independent and may
/// be computed on several workers, with deterministic output order.
std::vector<ScanPoint> scan(const RhoAlphaNigModel& base, ScanParameter parameter,
                            const std::vector<double>& grid, int max_order,
                            const std::vector<double>& times, int num_workers = 1,
                            int order_cap = kDefaultOrderCap);

}  // namespace levycum
