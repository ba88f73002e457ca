#include "levycum/bell_engine.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace levycum {

namespace {

// Compensated accumulator; the combinatorial prefactors grow
// factorially, so plain summation loses digits first here.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Partition data reused across decompositions: the combinatorial
// denominator is exact, the coefficient product is per-factor.
struct PartitionTerm {
  int num_columns = 0;
  BigInt denominator;        // Lambda! * m(Lambda)!
  std::vector<MultiIndex> columns;
  std::vector<int> multiplicities;
};

using InnerCoefficient = double (*)(const MultiIndex&, int, const SubordinatedModel&);

double generic_coefficient(const MultiIndex& column, int k, const SubordinatedModel& model) {
  return generic_inner_coefficient(column, k, model.mixing, model.bases[static_cast<size_t>(k)]);
}

double brownian_coefficient(const MultiIndex& column, int k, const SubordinatedModel& model) {
  const auto& base = model.bases[static_cast<size_t>(k)];
  return brownian_inner_coefficient(column, k, model.mixing, base.gaussian_mean(),
                                    base.gaussian_variance());
}

// Per-evaluation caches; evaluation stays pure from the outside.
class BellEvaluator {
 public:
  BellEvaluator(const SubordinatedModel& model, InnerCoefficient coefficient, bool p2_only,
                int order_cap)
      : model_(model), coefficient_(coefficient), p2_only_(p2_only), order_cap_(order_cap) {}

  double evaluate(const MultiIndex& i) {
    const int d = model_.num_factors();
    const auto decompositions = enumerate_decompositions(i, d, order_cap_);
    const BigInt i_factorial = i.factorial();

    KahanSum sum;
    std::vector<const std::vector<PartitionTerm>*> parts(static_cast<size_t>(d));
    std::vector<size_t> choice(static_cast<size_t>(d));
    std::vector<int> l_vec(static_cast<size_t>(d));

    for (const auto& decomposition : decompositions) {
      bool feasible = true;
      for (int k = 0; k < d; ++k) {
        parts[static_cast<size_t>(k)] = &partitions_of(decomposition[static_cast<size_t>(k)]);
        if (parts[static_cast<size_t>(k)]->empty()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;

      // Odometer over the cartesian product of per-factor partitions.
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        for (int k = 0; k < d; ++k)
          l_vec[static_cast<size_t>(k)] =
              (*parts[static_cast<size_t>(k)])[choice[static_cast<size_t>(k)]].num_columns;

        const double t_cumulant = model_.subordinator.cumulant(MultiIndex(l_vec));
        if (t_cumulant != 0.0) {
          double g_product = 1.0;
          BigInt denominator = 1;
          for (int k = 0; k < d; ++k) {
            const PartitionTerm& p = (*parts[static_cast<size_t>(k)])[choice[static_cast<size_t>(k)]];
            g_product *= coefficient_product(k, p);
            if (g_product == 0.0) break;
            denominator *= p.denominator;
          }
          if (g_product != 0.0) {
            // i! / (Lambda_1! m_1! ... Lambda_d! m_d!) is an exact integer.
            const BigInt prefactor = i_factorial / denominator;
            sum.add(prefactor.convert_to<double>() * t_cumulant * g_product);
          }
        }

        int k = d - 1;
        for (; k >= 0; --k) {
          if (++choice[static_cast<size_t>(k)] < parts[static_cast<size_t>(k)]->size()) break;
          choice[static_cast<size_t>(k)] = 0;
        }
        if (k < 0) break;
      }
    }
    return sum.value();
  }

 private:
  const std::vector<PartitionTerm>& partitions_of(const MultiIndex& s) {
    auto it = partition_cache_.find(s);
    if (it != partition_cache_.end()) return it->second;
    std::vector<PartitionTerm> terms;
    const auto partitions =
        p2_only_ ? enumerate_p2_partitions(s, order_cap_) : enumerate_partitions(s, order_cap_);
    terms.reserve(partitions.size());
    for (const auto& p : partitions) {
      PartitionTerm t;
      t.num_columns = p.num_columns();
      t.denominator = p.factorial() * p.multiplicity_factorial();
      t.columns = p.columns;
      t.multiplicities = p.multiplicities;
      terms.push_back(std::move(t));
    }
    return partition_cache_.emplace(s, std::move(terms)).first->second;
  }

  // g_{k,Lambda} = prod_j g_{k,lambda_j}^{r_j}; the empty partition
  // contributes 1.
  double coefficient_product(int k, const PartitionTerm& p) {
    double product = 1.0;
    for (size_t j = 0; j < p.columns.size(); ++j) {
      const double g = coefficient(k, p.columns[j]);
      if (g == 0.0) return 0.0;
      for (int r = 0; r < p.multiplicities[j]; ++r) product *= g;
    }
    return product;
  }

  double coefficient(int k, const MultiIndex& column) {
    const auto key = std::make_pair(k, column);
    auto it = coefficient_cache_.find(key);
    if (it != coefficient_cache_.end()) return it->second;
    const double g = coefficient_(column, k, model_);
    coefficient_cache_.emplace(key, g);
    return g;
  }

  const SubordinatedModel& model_;
  InnerCoefficient coefficient_;
  bool p2_only_;
  int order_cap_;
  std::map<MultiIndex, std::vector<PartitionTerm>> partition_cache_;
  std::map<std::pair<int, MultiIndex>, double> coefficient_cache_;
};

void validate_index(const SubordinatedModel& model, const MultiIndex& i, int order_cap) {
  model.validate();
  if (i.dimension() != model.num_components())
    throw std::invalid_argument("cumulant: index dimension != model components");
  if (i.order() < 1) throw std::invalid_argument("cumulant: order must be >= 1");
  if (i.order() > order_cap)
    throw CapacityError("cumulant: total order " + std::to_string(i.order()) +
                        " exceeds cap " + std::to_string(order_cap));
}

}  // namespace

double cumulant(const SubordinatedModel& model, const MultiIndex& i, int order_cap) {
  validate_index(model, i, order_cap);
  BellEvaluator evaluator(model, &generic_coefficient, /*p2_only=*/false, order_cap);
  return evaluator.evaluate(i);
}

double cumulant_brownian(const SubordinatedModel& model, const MultiIndex& i, int order_cap) {
  validate_index(model, i, order_cap);
  for (const auto& base : model.bases)
    if (!base.is_gaussian())
      throw std::invalid_argument("cumulant_brownian: non-Gaussian base process");
  BellEvaluator evaluator(model, &brownian_coefficient, /*p2_only=*/true, order_cap);
  return evaluator.evaluate(i);
}

double cumulant_univariate(double mean, double variance, const UnivariateCumulants& subordinator,
                           int order, int order_cap) {
  if (order < 1) throw std::invalid_argument("cumulant_univariate: order must be >= 1");
  if (order > order_cap)
    throw CapacityError("cumulant_univariate: order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(order_cap));
  const MultiIndex i{order};
  const BigInt i_factorial = factorial(order);

  KahanSum sum;
  for (const auto& p : enumerate_p2_partitions(i, order_cap)) {
    if (p.columns.empty()) continue;
    double g_product = 1.0;
    for (size_t j = 0; j < p.columns.size(); ++j) {
      const double g = p.columns[j][0] == 1 ? mean : variance;
      if (g == 0.0) {
        g_product = 0.0;
        break;
      }
      for (int r = 0; r < p.multiplicities[j]; ++r) g_product *= g;
    }
    if (g_product == 0.0) continue;
    const BigInt prefactor = i_factorial / (p.factorial() * p.multiplicity_factorial());
    sum.add(prefactor.convert_to<double>() * subordinator.cumulant(p.num_columns()) * g_product);
  }
  return sum.value();
}

}  // namespace levycum
