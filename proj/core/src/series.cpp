#include "levycum/series.hpp"

#include <cmath>
#include <stdexcept>

namespace levycum {

namespace {

double exact_to_double(const BigInt& v) { return v.convert_to<double>(); }

// prod_s C(i_s, j_s) for j <= i componentwise, exact then narrowed.
double multinomial_weight(const MultiIndex& total, const MultiIndex& part) {
  BigInt w = 1;
  for (int s = 0; s < total.dimension(); ++s) w *= binomial(total[s], part[s]);
  return exact_to_double(w);
}

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b, const char* where) {
  if (a.num_vars() != b.num_vars() || a.max_total_degree() != b.max_total_degree())
    throw std::invalid_argument(std::string(where) + ": dimension or degree mismatch");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int num_vars, int max_total_degree)
    : num_vars_(num_vars), max_total_degree_(max_total_degree) {
  if (num_vars < 1) throw std::invalid_argument("TruncatedSeries: num_vars must be >= 1");
  if (max_total_degree < 1)
    throw std::invalid_argument("TruncatedSeries: max_total_degree must be >= 1");
}

double TruncatedSeries::coefficient(const MultiIndex& j) const {
  auto it = coefficients_.find(j);
  return it == coefficients_.end() ? 0.0 : it->second;
}

void TruncatedSeries::set_coefficient(const MultiIndex& j, double value) {
  if (j.dimension() != num_vars_)
    throw std::invalid_argument("TruncatedSeries: index dimension mismatch");
  if (j.order() > max_total_degree_)
    throw std::invalid_argument("TruncatedSeries: index beyond truncation degree");
  if (value == 0.0)
    coefficients_.erase(j);
  else
    coefficients_[j] = value;
}

double TruncatedSeries::constant_term() const {
  return coefficient(MultiIndex::zeros(num_vars_));
}

void TruncatedSeries::add_scaled(const TruncatedSeries& other, double scale) {
  require_compatible(*this, other, "TruncatedSeries::add_scaled");
  if (scale == 0.0) return;
  for (const auto& [j, c] : other.coefficients_) coefficients_[j] += scale * c;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b, "series_add");
  TruncatedSeries r = a;
  r.add_scaled(b, 1.0);
  return r;
}

TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b, "series_multiply");
  TruncatedSeries r(a.num_vars(), a.max_total_degree());
  for (const auto& [j, aj] : a.coefficients()) {
    for (const auto& [k, bk] : b.coefficients()) {
      if (j.order() + k.order() > a.max_total_degree()) continue;
      const MultiIndex i = j + k;
      const double term = aj * bk * multinomial_weight(i, j);
      if (term != 0.0) r.set_coefficient(i, r.coefficient(i) + term);
    }
  }
  return r;
}

TruncatedSeries series_compose_outer(const TruncatedSeries& outer,
                                     const std::vector<TruncatedSeries>& inner) {
  const int d = outer.num_vars();
  if (static_cast<int>(inner.size()) != d)
    throw std::invalid_argument("series_compose_outer: inner count != outer variables");
  const int degree = outer.max_total_degree();
  for (const auto& g : inner) {
    if (g.max_total_degree() != degree)
      throw std::invalid_argument("series_compose_outer: inner degree mismatch");
    if (g.num_vars() != inner.front().num_vars())
      throw std::invalid_argument("series_compose_outer: inner dimension mismatch");
    if (g.constant_term() != 0.0)
      throw std::invalid_argument("series_compose_outer: inner series has constant term");
  }
  const int n = inner.front().num_vars();

  TruncatedSeries result(n, degree);
  TruncatedSeries one(n, degree);
  one.set_coefficient(MultiIndex::zeros(n), 1.0);

  // Powers prod_k inner_k^{m_k}, built incrementally in graded order so
  // each power is one truncated multiply away from a predecessor.
  std::map<MultiIndex, TruncatedSeries> powers;
  powers.emplace(MultiIndex::zeros(d), one);

  std::vector<MultiIndex> frontier{MultiIndex::zeros(d)};
  for (int total = 0; total <= degree; ++total) {
    std::vector<MultiIndex> next;
    for (const auto& m : frontier) {
      const TruncatedSeries& pm = powers.at(m);
      const double fm = outer.coefficient(m);
      if (fm != 0.0) {
        // f(u) = sum f_m u^m / m! in the exponential convention.
        result.add_scaled(pm, fm / exact_to_double(m.factorial()));
      }
      if (total == degree) continue;
      for (int k = 0; k < d; ++k) {
        MultiIndex mk = m + MultiIndex::unit(d, k);
        if (powers.find(mk) != powers.end()) continue;
        powers.emplace(mk, series_multiply(pm, inner[static_cast<size_t>(k)]));
        next.push_back(mk);
      }
    }
    frontier = std::move(next);
  }
  return result;
}

TruncatedSeries linear_form_series(const Eigen::VectorXd& weights, int max_total_degree) {
  const int n = static_cast<int>(weights.size());
  TruncatedSeries s(n, max_total_degree);
  for (int m = 0; m < n; ++m)
    if (weights[m] != 0.0) s.set_coefficient(MultiIndex::unit(n, m), weights[m]);
  return s;
}

TruncatedSeries gaussian_cgf_series(const Eigen::VectorXd& drift,
                                    const Eigen::MatrixXd& covariance, int max_total_degree) {
  const int n = static_cast<int>(drift.size());
  if (covariance.rows() != n || covariance.cols() != n)
    throw std::invalid_argument("gaussian_cgf_series: covariance shape mismatch");
  TruncatedSeries s = linear_form_series(drift, max_total_degree);
  for (int m1 = 0; m1 < n; ++m1) {
    MultiIndex doubled = MultiIndex::unit(n, m1) + MultiIndex::unit(n, m1);
    if (covariance(m1, m1) != 0.0) s.set_coefficient(doubled, covariance(m1, m1));
    for (int m2 = m1 + 1; m2 < n; ++m2) {
      MultiIndex split = MultiIndex::unit(n, m1) + MultiIndex::unit(n, m2);
      const double cov = 0.5 * (covariance(m1, m2) + covariance(m2, m1));
      if (cov != 0.0) s.set_coefficient(split, cov);
    }
  }
  return s;
}

TruncatedSeries compose_univariate_cgf(const UnivariateCumulants& law,
                                       const TruncatedSeries& inner) {
  const int degree = inner.max_total_degree();
  TruncatedSeries outer(1, degree);
  for (int p = 1; p <= degree; ++p) {
    std::vector<int> idx{p};
    outer.set_coefficient(MultiIndex(idx), law.cumulant(p));
  }
  return series_compose_outer(outer, {inner});
}

TruncatedSeries subordinated_cgf_series(const SubordinatedModel& model, int max_total_degree) {
  model.validate();
  const int d = model.num_factors();

  std::vector<TruncatedSeries> inner;
  inner.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    TruncatedSeries arg = linear_form_series(model.mixing.col(k), max_total_degree);
    inner.push_back(compose_univariate_cgf(model.bases[static_cast<size_t>(k)], arg));
  }

  TruncatedSeries outer(d, max_total_degree);
  // K_T carries every joint cumulant of T up to the truncation degree.
  std::vector<int> cursor(static_cast<size_t>(d), 0);
  while (true) {
    MultiIndex j(cursor);
    if (j.order() >= 1 && j.order() <= max_total_degree)
      outer.set_coefficient(j, model.subordinator.cumulant(j));
    int s = d - 1;
    for (; s >= 0; --s) {
      if (cursor[static_cast<size_t>(s)] < max_total_degree) {
        ++cursor[static_cast<size_t>(s)];
        break;
      }
      cursor[static_cast<size_t>(s)] = 0;
    }
    if (s < 0) break;
  }
  return series_compose_outer(outer, inner);
}

double cumulants_by_composition(const SubordinatedModel& model, const MultiIndex& i,
                                int max_total_degree) {
  if (i.order() < 1)
    throw std::invalid_argument("cumulants_by_composition: order must be >= 1");
  if (i.order() > max_total_degree)
    throw CapacityError("cumulants_by_composition: order exceeds truncation degree");
  if (i.dimension() != model.num_components())
    throw std::invalid_argument("cumulants_by_composition: index dimension mismatch");
  return subordinated_cgf_series(model, max_total_degree).coefficient(i);
}

}  // namespace levycum
