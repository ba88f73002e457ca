#pragma once

#include <map>

#include <Eigen/Dense>

#include "levycum/multiindex.hpp"
#include "levycum/subordinated_model.hpp"

namespace levycum {

/// Multivariate formal power series truncated at a total degree, with
/// coefficients stored in the exponential convention: the entry at j is
/// the coefficient of z^j / j!.  A cgf stored this way has the cumulants
/// as its entries, which is the whole point of this module: it recovers
/// cumulants by direct series composition, independently of the Bell
/// polynomial engine.
class TruncatedSeries {
 public:
  TruncatedSeries(int num_vars, int max_total_degree);

  int num_vars() const { return num_vars_; }
  int max_total_degree() const { return max_total_degree_; }

  /// Coefficient of z^j / j!; zero when absent.
  double coefficient(const MultiIndex& j) const;
  void set_coefficient(const MultiIndex& j, double value);
  double constant_term() const;

  void add_scaled(const TruncatedSeries& other, double scale);
  const std::map<MultiIndex, double>& coefficients() const { return coefficients_; }

 private:
  int num_vars_;
  int max_total_degree_;
  std::map<MultiIndex, double> coefficients_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);

/// Exact truncated product; in the exponential convention the entry at
/// i picks up the multinomial weight prod_s C(i_s, j_s) for each split
/// i = j + k.
TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b);

/// f(inner_1(z), ..., inner_d(z)) truncated at the common total degree.
/// Every inner series must have zero constant term.
TruncatedSeries series_compose_outer(const TruncatedSeries& outer,
                                     const std::vector<TruncatedSeries>& inner);

/// sum_m weights[m] z_m as a series.
TruncatedSeries linear_form_series(const Eigen::VectorXd& weights, int max_total_degree);

/// drift' z + z' covariance z / 2 as a series (the cgf of a Gaussian
/// vector evaluated on z).
TruncatedSeries gaussian_cgf_series(const Eigen::VectorXd& drift,
                                    const Eigen::MatrixXd& covariance, int max_total_degree);

/// K_law(inner(z)) where K_law is the univariate cgf with the given
/// cumulant sequence; inner must have zero constant term.
TruncatedSeries compose_univariate_cgf(const UnivariateCumulants& law,
                                       const TruncatedSeries& inner);

/// The full cgf K_Y of a subordinated model as a truncated series:
/// K_T composed with the per-factor cgfs of the mixed bases.
TruncatedSeries subordinated_cgf_series(const SubordinatedModel& model, int max_total_degree);

/// Oracle value of c_i(Y): the i-th entry of the composed cgf.
double cumulants_by_composition(const SubordinatedModel& model, const MultiIndex& i,
                                int max_total_degree = 8);

}  // namespace levycum
