#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "levycum/multiindex.hpp"

namespace levycum {

/// k-th cumulant of an inverse Gaussian law in the convention with
/// c_1 = a/b and c_k = a (2k-3)!! / b^{2k-1} for k >= 2.
double ig_cumulant(double a, double b, int k);

/// Parameters of alpha*X when X ~ IG(a, b): returns (a sqrt(alpha),
/// b / sqrt(alpha)), so that c_k scales as alpha^k.
std::pair<double, double> ig_scale(double a, double b, double alpha);

/// Cumulant sequence of a one-dimensional infinitely divisible law.
/// The inverse Gaussian and Gaussian kinds carry closed forms; table
/// holds explicit values c_1, c_2, ... ; zero is the degenerate
/// subordinator at the a = 0 boundary.
class UnivariateCumulants {
 public:
  enum class Kind { InverseGaussian, Gaussian, Table, Zero };

  static UnivariateCumulants inverse_gaussian(double a, double b);
  static UnivariateCumulants gaussian(double mean, double variance);
  static UnivariateCumulants table(std::vector<double> values);  // values[0] = c_1
  static UnivariateCumulants zero();

  double cumulant(int k) const;  // k >= 1
  Kind kind() const { return kind_; }
  bool is_gaussian() const { return kind_ == Kind::Gaussian || kind_ == Kind::Zero; }

  /// Gaussian accessors; a Zero law reads as N(0, 0).
  double gaussian_mean() const;
  double gaussian_variance() const;

 private:
  UnivariateCumulants(Kind kind, double p1, double p2, std::vector<double> values)
      : kind_(kind), p1_(p1), p2_(p2), table_(std::move(values)) {}

  Kind kind_ = Kind::Zero;
  double p1_ = 0.0;  // IG a / Gaussian mean
  double p2_ = 0.0;  // IG b / Gaussian variance
  std::vector<double> table_;
};

/// Joint cumulants c_j(T) of a d-dimensional subordinator, indexed by
/// multi-index.  Zero components of j restrict to the sub-vector over
/// the nonzero positions.
class JointCumulantProvider {
 public:
  /// Independent components: c_j = 0 whenever j has two or more nonzero
  /// components, otherwise the marginal cumulant.
  static JointCumulantProvider independent(std::vector<UnivariateCumulants> components);
  /// All components equal to one base process: c_j = c_{|j|}(base).
  static JointCumulantProvider comonotone(UnivariateCumulants base, int dimension);
  /// Explicit table; missing indices are an error (missing cumulant data).
  static JointCumulantProvider tabulated(int dimension, std::map<MultiIndex, double> values);
  static JointCumulantProvider from_function(int dimension,
                                             std::function<double(const MultiIndex&)> fn);

  int dimension() const { return dimension_; }
  double cumulant(const MultiIndex& j) const;  // |j| >= 1

 private:
  JointCumulantProvider(int dimension, std::function<double(const MultiIndex&)> fn)
      : dimension_(dimension), fn_(std::move(fn)) {}

  int dimension_ = 0;
  std::function<double(const MultiIndex&)> fn_;
};

/// Coefficient g_{k,lambda} of the inner series when Z_k is Brownian
/// with mean mean_k and variance variance_k: a_{mk} mean_k for a unit
/// column at row m, a_{mk}^2 variance_k for a doubled row, a_{m1 k}
/// a_{m2 k} variance_k for a split pair, 0 above order two.
double brownian_inner_coefficient(const MultiIndex& column, int k, const Eigen::MatrixXd& A,
                                  double mean_k, double variance_k);

/// General inner coefficient c_{|lambda|}(Z_k) * prod_m a_{mk}^{lambda_m}.
double generic_inner_coefficient(const MultiIndex& column, int k, const Eigen::MatrixXd& A,
                                 const UnivariateCumulants& base);

}  // namespace levycum
