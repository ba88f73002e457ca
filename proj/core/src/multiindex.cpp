#include "levycum/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace levycum {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double_factorial: argument below -1");
  BigInt r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

MultiIndex::MultiIndex(std::vector<int> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  for (int c : components_)
    if (c < 0) throw std::invalid_argument("MultiIndex: negative component");
}

MultiIndex::MultiIndex(std::initializer_list<int> components)
    : MultiIndex(std::vector<int>(components)) {}

MultiIndex MultiIndex::zeros(int dimension) {
  return MultiIndex(std::vector<int>(static_cast<size_t>(dimension), 0));
}

MultiIndex MultiIndex::unit(int dimension, int position) {
  std::vector<int> c(static_cast<size_t>(dimension), 0);
  c.at(static_cast<size_t>(position)) = 1;
  return MultiIndex(std::move(c));
}

int MultiIndex::order() const {
  return std::accumulate(components_.begin(), components_.end(), 0);
}

BigInt MultiIndex::factorial() const {
  BigInt r = 1;
  for (int c : components_) r *= levycum::factorial(c);
  return r;
}

int MultiIndex::support_size() const {
  return static_cast<int>(std::count_if(components_.begin(), components_.end(),
                                        [](int c) { return c != 0; }));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dimension() != other.dimension())
    throw std::invalid_argument("MultiIndex: dimension mismatch in +");
  std::vector<int> c(components_);
  for (size_t s = 0; s < c.size(); ++s) c[s] += other.components_[s];
  return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (dimension() != other.dimension())
    throw std::invalid_argument("MultiIndex: dimension mismatch in -");
  std::vector<int> c(components_);
  for (size_t s = 0; s < c.size(); ++s) {
    c[s] -= other.components_[s];
    if (c[s] < 0) throw std::invalid_argument("MultiIndex: difference has negative component");
  }
  return MultiIndex(std::move(c));
}

bool MultiIndex::leq_componentwise(const MultiIndex& other) const {
  if (dimension() != other.dimension()) return false;
  for (size_t s = 0; s < components_.size(); ++s)
    if (components_[s] > other.components_[s]) return false;
  return true;
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  return std::lexicographical_compare(components_.begin(), components_.end(),
                                      other.components_.begin(), other.components_.end());
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t s = 0; s < components_.size(); ++s) {
    if (s) os << ',';
    os << components_[s];
  }
  os << ')';
  return os.str();
}

int MultiIndexPartition::num_columns() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

int MultiIndexPartition::order() const {
  int total = 0;
  for (size_t j = 0; j < columns.size(); ++j) total += multiplicities[j] * columns[j].order();
  return total;
}

BigInt MultiIndexPartition::factorial() const {
  BigInt r = 1;
  for (size_t j = 0; j < columns.size(); ++j) {
    BigInt cf = columns[j].factorial();
    for (int p = 0; p < multiplicities[j]; ++p) r *= cf;
  }
  return r;
}

BigInt MultiIndexPartition::multiplicity_factorial() const {
  BigInt r = 1;
  for (int m : multiplicities) r *= levycum::factorial(m);
  return r;
}

int MultiIndexPartition::max_column_order() const {
  int m = 0;
  for (const auto& c : columns) m = std::max(m, c.order());
  return m;
}

MultiIndex MultiIndexPartition::target(int dimension) const {
  MultiIndex t = MultiIndex::zeros(dimension);
  for (size_t j = 0; j < columns.size(); ++j)
    for (int p = 0; p < multiplicities[j]; ++p) t = t + columns[j];
  return t;
}

std::string MultiIndexPartition::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t j = 0; j < columns.size(); ++j) {
    if (j) os << ' ';
    os << columns[j].to_string();
    if (multiplicities[j] > 1) os << '^' << multiplicities[j];
  }
  os << ']';
  return os.str();
}

namespace {

void check_capacity(const MultiIndex& i, int order_cap, const char* where) {
  if (i.order() > order_cap) {
    throw CapacityError(std::string(where) + ": total order " + std::to_string(i.order()) +
                        " exceeds cap " + std::to_string(order_cap));
  }
}

// Advances idx through the componentwise box [0, bound] in lexicographic
// order (last component fastest).  Returns false after the last point.
bool next_in_box(std::vector<int>& idx, const MultiIndex& bound) {
  for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
    if (idx[static_cast<size_t>(s)] < bound[s]) {
      ++idx[static_cast<size_t>(s)];
      return true;
    }
    idx[static_cast<size_t>(s)] = 0;
  }
  return false;
}

MultiIndexPartition compress(const std::vector<MultiIndex>& weakly_increasing) {
  MultiIndexPartition p;
  for (const auto& col : weakly_increasing) {
    if (!p.columns.empty() && p.columns.back() == col) {
      ++p.multiplicities.back();
    } else {
      p.columns.push_back(col);
      p.multiplicities.push_back(1);
    }
  }
  return p;
}

// Depth-first enumeration choosing columns in weakly increasing
// lexicographic order, which yields each partition exactly once in
// canonical form without a dedup pass.  min_column is empty at the root.
void enumerate_partitions_rec(const MultiIndex& remaining, const MultiIndex& min_column,
                              bool has_min, int max_column_order,
                              std::vector<MultiIndex>& stack,
                              std::vector<MultiIndexPartition>& out) {
  if (remaining.is_zero()) {
    out.push_back(compress(stack));
    return;
  }
  const int n = remaining.dimension();
  std::vector<int> idx(static_cast<size_t>(n), 0);
  do {
    MultiIndex column(idx);
    if (column.is_zero()) continue;
    if (max_column_order > 0 && column.order() > max_column_order) continue;
    if (has_min && column < min_column) continue;
    stack.push_back(column);
    enumerate_partitions_rec(remaining - column, column, true, max_column_order, stack, out);
    stack.pop_back();
  } while (next_in_box(idx, remaining));
}

std::vector<MultiIndexPartition> enumerate_partitions_impl(const MultiIndex& i, int order_cap,
                                                           int max_column_order,
                                                           const char* where) {
  check_capacity(i, order_cap, where);
  std::vector<MultiIndexPartition> out;
  std::vector<MultiIndex> stack;
  enumerate_partitions_rec(i, i, false, max_column_order, stack, out);
  return out;
}

void enumerate_decompositions_rec(const MultiIndex& remaining, int parts,
                                  std::vector<MultiIndex>& tuple,
                                  std::vector<std::vector<MultiIndex>>& out) {
  if (parts == 1) {
    tuple.push_back(remaining);
    out.push_back(tuple);
    tuple.pop_back();
    return;
  }
  std::vector<int> idx(static_cast<size_t>(remaining.dimension()), 0);
  do {
    MultiIndex part(idx);
    tuple.push_back(part);
    enumerate_decompositions_rec(remaining - part, parts - 1, tuple, out);
    tuple.pop_back();
  } while (next_in_box(idx, remaining));
}

}  // namespace

std::vector<MultiIndexPartition> enumerate_partitions(const MultiIndex& i, int order_cap) {
  return enumerate_partitions_impl(i, order_cap, 0, "enumerate_partitions");
}

std::vector<MultiIndexPartition> enumerate_p2_partitions(const MultiIndex& i, int order_cap) {
  return enumerate_partitions_impl(i, order_cap, 2, "enumerate_p2_partitions");
}

std::vector<std::vector<MultiIndex>> enumerate_decompositions(const MultiIndex& i, int parts,
                                                              int order_cap) {
  if (parts < 1) throw std::invalid_argument("enumerate_decompositions: parts must be >= 1");
  check_capacity(i, order_cap, "enumerate_decompositions");
  std::vector<std::vector<MultiIndex>> out;
  std::vector<MultiIndex> tuple;
  enumerate_decompositions_rec(i, parts, tuple, out);
  return out;
}

BigInt count_decompositions(const MultiIndex& i, int parts) {
  if (parts < 1) throw std::invalid_argument("count_decompositions: parts must be >= 1");
  BigInt r = 1;
  for (int s = 0; s < i.dimension(); ++s) r *= binomial(i[s] + parts - 1, parts - 1);
  return r;
}

}  // namespace levycum
