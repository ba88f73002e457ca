#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "levycum/errors.hpp"

namespace levycum {

// Factorials and partition counts overflow 64 bits quickly, so every
// combinatorial quantity is kept exact until the numeric boundary.
using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);
BigInt double_factorial(int n);  // n!! with (-1)!! = 0!! = 1
BigInt binomial(int n, int k);

/// A vector of non-negative integer exponents.  Comparison is
/// lexicographic from the first component, which fixes the canonical
/// column order used by partitions.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> components);
  MultiIndex(std::initializer_list<int> components);

  static MultiIndex zeros(int dimension);
  static MultiIndex unit(int dimension, int position);

  int dimension() const { return static_cast<int>(components_.size()); }
  int operator[](int s) const { return components_[static_cast<size_t>(s)]; }
  const std::vector<int>& components() const { return components_; }

  /// |i|: the sum of components.
  int order() const;
  /// i! = prod_s i_s!, exact.
  BigInt factorial() const;
  bool is_zero() const { return order() == 0; }
  /// Number of nonzero components.
  int support_size() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other <= *this componentwise.
  MultiIndex operator-(const MultiIndex& other) const;
  bool leq_componentwise(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const { return components_ == other.components_; }
  bool operator!=(const MultiIndex& other) const { return !(*this == other); }
  bool operator<(const MultiIndex& other) const;

  std::string to_string() const;  // "(2,0,1)"

 private:
  std::vector<int> components_;
};

/// A partition of a multi-index: distinct nonzero columns with
/// multiplicities, columns strictly increasing in lexicographic order.
/// The weighted column sum reproduces the target.  The zero multi-index
/// has exactly one partition, the empty one.
struct MultiIndexPartition {
  std::vector<MultiIndex> columns;   // distinct, strictly increasing
  std::vector<int> multiplicities;   // r_j >= 1, aligned with columns

  /// l(Lambda) = sum r_j: total number of columns counted with multiplicity.
  int num_columns() const;
  /// |Lambda| = sum r_j |lambda_j|.
  int order() const;
  /// Lambda! = prod (lambda_j!)^{r_j}.
  BigInt factorial() const;
  /// m(Lambda)! = prod r_j!.
  BigInt multiplicity_factorial() const;
  /// Largest column order |lambda_j|; 0 for the empty partition.
  int max_column_order() const;
  /// Reconstructs the partitioned multi-index.
  MultiIndex target(int dimension) const;

  std::string to_string() const;  // "[(1,0)^2 (0,1)]"

  bool operator==(const MultiIndexPartition& other) const {
    return columns == other.columns && multiplicities == other.multiplicities;
  }
};

inline constexpr int kDefaultOrderCap = 10;

/// All partitions of i, each exactly once, in a deterministic order.
/// Throws CapacityError when |i| exceeds order_cap.
std::vector<MultiIndexPartition> enumerate_partitions(const MultiIndex& i,
                                                      int order_cap = kDefaultOrderCap);

/// Partitions of i whose columns all have component sum <= 2; equals
/// the <=2 filtrate of enumerate_partitions, element for element.
std::vector<MultiIndexPartition> enumerate_p2_partitions(const MultiIndex& i,
                                                         int order_cap = kDefaultOrderCap);

/// All ordered tuples (s_1,...,s_parts) of multi-indices (zero allowed)
/// with componentwise sum i.  Count is prod_s C(i_s + parts - 1, parts - 1).
std::vector<std::vector<MultiIndex>> enumerate_decompositions(const MultiIndex& i, int parts,
                                                              int order_cap = kDefaultOrderCap);

BigInt count_decompositions(const MultiIndex& i, int parts);

}  // namespace levycum
