#include "levycum/cumulants.hpp"

#include <cmath>
#include <stdexcept>

namespace levycum {

double ig_cumulant(double a, double b, int k) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("ig_cumulant: parameters must be positive");
  if (k < 1) throw std::invalid_argument("ig_cumulant: order must be >= 1");
  if (k == 1) return a / b;
  const double dfact = double_factorial(2 * k - 3).convert_to<double>();
  return a * dfact / std::pow(b, 2 * k - 1);
}

std::pair<double, double> ig_scale(double a, double b, double alpha) {
  if (!(a > 0.0) || !(b > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("ig_scale: parameters must be positive");
  const double s = std::sqrt(alpha);
  return {a * s, b / s};
}

UnivariateCumulants UnivariateCumulants::inverse_gaussian(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("UnivariateCumulants: IG parameters must be positive");
  return UnivariateCumulants(Kind::InverseGaussian, a, b, {});
}

UnivariateCumulants UnivariateCumulants::gaussian(double mean, double variance) {
  if (variance < 0.0)
    throw std::invalid_argument("UnivariateCumulants: negative Gaussian variance");
  return UnivariateCumulants(Kind::Gaussian, mean, variance, {});
}

UnivariateCumulants UnivariateCumulants::table(std::vector<double> values) {
  return UnivariateCumulants(Kind::Table, 0.0, 0.0, std::move(values));
}

UnivariateCumulants UnivariateCumulants::zero() {
  return UnivariateCumulants(Kind::Zero, 0.0, 0.0, {});
}

double UnivariateCumulants::cumulant(int k) const {
  if (k < 1) throw std::invalid_argument("UnivariateCumulants: order must be >= 1");
  switch (kind_) {
    case Kind::InverseGaussian:
      return ig_cumulant(p1_, p2_, k);
    case Kind::Gaussian:
      if (k == 1) return p1_;
      if (k == 2) return p2_;
      return 0.0;
    case Kind::Table:
      if (static_cast<size_t>(k) > table_.size())
        throw std::invalid_argument("UnivariateCumulants: cumulant order beyond table length");
      return table_[static_cast<size_t>(k - 1)];
    case Kind::Zero:
      return 0.0;
  }
  return 0.0;
}

double UnivariateCumulants::gaussian_mean() const {
  if (kind_ == Kind::Gaussian) return p1_;
  if (kind_ == Kind::Zero) return 0.0;
  throw std::invalid_argument("UnivariateCumulants: not a Gaussian law");
}

double UnivariateCumulants::gaussian_variance() const {
  if (kind_ == Kind::Gaussian) return p2_;
  if (kind_ == Kind::Zero) return 0.0;
  throw std::invalid_argument("UnivariateCumulants: not a Gaussian law");
}

JointCumulantProvider JointCumulantProvider::independent(
    std::vector<UnivariateCumulants> components) {
  const int d = static_cast<int>(components.size());
  if (d < 1) throw std::invalid_argument("JointCumulantProvider: empty component list");
  auto fn = [components = std::move(components)](const MultiIndex& j) -> double {
    if (j.support_size() >= 2) return 0.0;
    for (int k = 0; k < j.dimension(); ++k)
      if (j[k] > 0) return components[static_cast<size_t>(k)].cumulant(j[k]);
    return 0.0;
  };
  return JointCumulantProvider(d, std::move(fn));
}

JointCumulantProvider JointCumulantProvider::comonotone(UnivariateCumulants base, int dimension) {
  if (dimension < 1) throw std::invalid_argument("JointCumulantProvider: dimension must be >= 1");
  auto fn = [base = std::move(base)](const MultiIndex& j) -> double {
    return base.cumulant(j.order());
  };
  return JointCumulantProvider(dimension, std::move(fn));
}

JointCumulantProvider JointCumulantProvider::tabulated(int dimension,
                                                       std::map<MultiIndex, double> values) {
  if (dimension < 1) throw std::invalid_argument("JointCumulantProvider: dimension must be >= 1");
  auto fn = [values = std::move(values)](const MultiIndex& j) -> double {
    auto it = values.find(j);
    if (it == values.end())
      throw std::invalid_argument("JointCumulantProvider: missing cumulant data at " +
                                  j.to_string());
    return it->second;
  };
  return JointCumulantProvider(dimension, std::move(fn));
}

JointCumulantProvider JointCumulantProvider::from_function(
    int dimension, std::function<double(const MultiIndex&)> fn) {
  if (dimension < 1) throw std::invalid_argument("JointCumulantProvider: dimension must be >= 1");
  return JointCumulantProvider(dimension, std::move(fn));
}

double JointCumulantProvider::cumulant(const MultiIndex& j) const {
  if (j.dimension() != dimension_)
    throw std::invalid_argument("JointCumulantProvider: index dimension mismatch");
  if (j.order() < 1)
    throw std::invalid_argument("JointCumulantProvider: order must be >= 1");
  return fn_(j);
}

double brownian_inner_coefficient(const MultiIndex& column, int k, const Eigen::MatrixXd& A,
                                  double mean_k, double variance_k) {
  if (column.is_zero())
    throw std::invalid_argument("brownian_inner_coefficient: zero column");
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
  if (order == 1) return A(first, k) * mean_k;
  if (second < 0) return A(first, k) * A(first, k) * variance_k;  // one row doubled
  return A(first, k) * A(second, k) * variance_k;                 // split across two rows
}

double generic_inner_coefficient(const MultiIndex& column, int k, const Eigen::MatrixXd& A,
                                 const UnivariateCumulants& base) {
  if (column.is_zero())
    throw std::invalid_argument("generic_inner_coefficient: zero column");
  double weight = 1.0;
  for (int m = 0; m < column.dimension(); ++m)
    for (int p = 0; p < column[m]; ++p) weight *= A(m, k);
  if (weight == 0.0) return 0.0;
  return base.cumulant(column.order()) * weight;
}

}  // namespace levycum
