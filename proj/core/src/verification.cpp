#include "levycum/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levycum/mc_engine.hpp"
#include "levycum/scan_output.hpp"
#include "levycum/series.hpp"

namespace levycum {

namespace {

std::vector<MultiIndex> indices_up_to(int n, int max_order, bool mixed_only) {
  std::vector<MultiIndex> out;
  std::vector<int> cursor(static_cast<size_t>(n), 0);
  while (true) {
    MultiIndex i(cursor);
    const bool keep = i.order() >= 1 && i.order() <= max_order &&
                      (!mixed_only || i.support_size() >= 2);
    if (keep) out.push_back(i);
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

double relative_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  if (scale == 0.0) return 0.0;
  return std::abs(x - y) / scale;
}

std::string describe(double x) { return format_significant(x); }

// Least-squares polynomial fit; returns the largest absolute residual.
double max_fit_residual(const std::vector<double>& xs, const std::vector<double>& ys,
                        int degree) {
  const int rows = static_cast<int>(xs.size());
  Eigen::MatrixXd vandermonde(rows, degree + 1);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    double p = 1.0;
    for (int c = 0; c <= degree; ++c) {
      vandermonde(r, c) = p;
      p *= xs[static_cast<size_t>(r)];
    }
    y[r] = ys[static_cast<size_t>(r)];
  }
  const Eigen::VectorXd coefficients = vandermonde.colPivHouseholderQr().solve(y);
  return (vandermonde * coefficients - y).cwiseAbs().maxCoeff();
}

}  // namespace

// Sum of the idiosyncratic univariate compositions plus the common-clock
// composition; shares no code with the partition sums in rho_alpha_cumulant.
TruncatedSeries rho_alpha_cgf_series(const RhoAlphaNigModel& model, int max_total_degree) {
  const int n = model.num_assets();
  TruncatedSeries total(n, max_total_degree);
  for (int j = 0; j < n; ++j) {
    TruncatedSeries inner(n, max_total_degree);
    inner.set_coefficient(MultiIndex::unit(n, j), model.mu(j));
    inner.set_coefficient(MultiIndex::unit(n, j) + MultiIndex::unit(n, j),
                          model.sigma(j) * model.sigma(j));
    total.add_scaled(compose_univariate_cgf(model.idiosyncratic_clock(j), inner), 1.0);
  }
  const TruncatedSeries common_inner =
      gaussian_cgf_series(model.common_drift(), model.common_covariance(), max_total_degree);
  total.add_scaled(compose_univariate_cgf(model.common_clock(), common_inner), 1.0);
  return total;
}

std::vector<CheckResult> run_verification(const RhoAlphaNigModel& model,
                                          const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const int n = model.num_assets();
  const int orders = options.orders;

  auto add = [&results](std::string name, CheckResult::Status status, std::string detail) {
    results.push_back({std::move(name), status, std::move(detail)});
  };

  // 1. Closed forms against the series oracle.
  {
    const TruncatedSeries oracle = rho_alpha_cgf_series(model, orders);
    double worst = 0.0;
    MultiIndex worst_index = MultiIndex::unit(n, 0);
    double worst_engine = 0.0, worst_series = 0.0;
    for (const auto& i : indices_up_to(n, orders, false)) {
      const double engine = rho_alpha_cumulant(model, i, 1.0);
      const double series = oracle.coefficient(i);
      const double gap = relative_gap(engine, series);
      if (gap > worst) {
        worst = gap;
        worst_index = i;
        worst_engine = engine;
        worst_series = series;
      }
    }
    add("engine_vs_series_oracle",
        worst <= 1e-10 ? CheckResult::Status::Pass : CheckResult::Status::Fail,
        "max relative gap " + describe(worst) + " at " + worst_index.to_string() + ": engine " +
            describe(worst_engine) + " vs series " + describe(worst_series));
  }

  // 2. Monte Carlo agreement within four batch standard errors.
  const int mc_order = std::min(orders, 4);
  if (options.num_paths < 10'000) {
    add("mc_agreement", CheckResult::Status::Inconclusive,
        "num_paths " + std::to_string(options.num_paths) + " below 10^4, SE too wide");
  } else {
    SimulationPlan plan;
    plan.model = model;
    plan.t = 1.0;
    plan.num_paths = options.num_paths;
    plan.seed = options.seed;
    plan.num_workers = options.num_workers;
    const Eigen::MatrixXd samples = simulate_increments(plan);
    const EmpiricalCumulants empirical = estimate_cumulants(samples, mc_order);

    for (const auto& i : indices_up_to(n, mc_order, false)) {
      const double analytic = rho_alpha_cumulant(model, i, plan.t);
      const double estimate = empirical.estimates.at(i);
      const double se = empirical.standard_errors.at(i);
      double scale = 1.0;
      for (int j = 0; j < n; ++j) {
        if (i[j] == 0) continue;
        const double variance = rho_alpha_cumulant(
            model, MultiIndex::unit(n, j) + MultiIndex::unit(n, j), plan.t);
        scale *= std::pow(variance, 0.5 * i[j]);
      }
      const std::string name = "mc_agreement" + i.to_string();
      if (4.0 * se > 0.5 * scale) {
        add(name, CheckResult::Status::Inconclusive,
            "4*SE " + describe(4.0 * se) + " wider than half the cumulant scale " +
                describe(scale));
      } else if (std::abs(analytic - estimate) <= 4.0 * se) {
        add(name, CheckResult::Status::Pass,
            "analytic " + describe(analytic) + " within 4*SE " + describe(4.0 * se) +
                " of estimate " + describe(estimate));
      } else {
        add(name, CheckResult::Status::Fail,
            "analytic " + describe(analytic) + " vs estimate " + describe(estimate) +
                " exceeds 4*SE " + describe(4.0 * se));
      }
    }
  }

  // 3a. Time scaling: normalized cumulants, rescaled by the known
  // t-rate, are t-free.
  {
    double worst = 0.0;
    for (const auto& i : indices_up_to(n, orders, true)) {
      const double rate = 0.5 * (i.order() - 2);
      double reference = 0.0;
      bool first = true;
      for (double t : options.times) {
        const double value = normalized_cumulant(model, i, t) * std::pow(t, rate);
        if (first) {
          reference = value;
          first = false;
        } else {
          worst = std::max(worst, relative_gap(reference, value));
        }
      }
    }
    add("time_scaling", worst <= 1e-12 ? CheckResult::Status::Pass : CheckResult::Status::Fail,
        "max relative drift " + describe(worst) + " across times");
  }

  // 3b. Polynomial structure in rho_12 (bivariate models).
  if (n == 2) {
    std::vector<double> grid;
    for (int k = 0; k < options.rho_grid_points; ++k)
      grid.push_back(-1.0 + 2.0 * k / (options.rho_grid_points - 1));
    struct FitCase {
      MultiIndex index;
      int degree;
    };
    const std::vector<FitCase> cases = {{MultiIndex{1, 1}, 1},
                                        {MultiIndex{1, 2}, 1},
                                        {MultiIndex{2, 1}, 1},
                                        {MultiIndex{1, 3}, 1},
                                        {MultiIndex{3, 1}, 1},
                                        {MultiIndex{2, 2}, 2}};
    double worst = 0.0;
    for (const auto& fit : cases) {
      if (fit.index.order() > orders) continue;
      std::vector<double> values;
      double value_scale = 1.0;
      for (double r : grid) {
        const RhoAlphaNigModel variant = model.with_rho12(r);
        values.push_back(normalized_cumulant(variant, fit.index, 1.0));
        value_scale = std::max(value_scale, std::abs(values.back()));
      }
      worst = std::max(worst, max_fit_residual(grid, values, fit.degree) / value_scale);
    }
    add("rho_polynomial_structure",
        worst <= 1e-10 ? CheckResult::Status::Pass : CheckResult::Status::Fail,
        "max scaled fit residual " + describe(worst));
  } else {
    add("rho_polynomial_structure", CheckResult::Status::Inconclusive,
        "defined for bivariate models only");
  }

  // 3c. Marginal cumulants do not move with a or rho_12.
  {
    double worst = 0.0;
    std::vector<RhoAlphaNigModel> variants;
    for (double fraction : {0.05, 0.5, 1.0}) variants.push_back(model.with_a(fraction * model.a_max()));
    if (n == 2)
      for (double r : {-0.9, 0.0, 0.9}) variants.push_back(model.with_rho12(r));
    const int max_marginal_order = std::min(8, kDefaultOrderCap);
    for (int j = 0; j < n; ++j) {
      for (int k = 1; k <= max_marginal_order; ++k) {
        MultiIndex i = MultiIndex::zeros(n);
        {
          std::vector<int> c(static_cast<size_t>(n), 0);
          c[static_cast<size_t>(j)] = k;
          i = MultiIndex(c);
        }
        const double reference = rho_alpha_cumulant(model, i, 1.0);
        for (const auto& variant : variants)
          worst = std::max(worst, relative_gap(reference, rho_alpha_cumulant(variant, i, 1.0)));
      }
    }
    add("marginal_invariance",
        worst <= 1e-10 ? CheckResult::Status::Pass : CheckResult::Status::Fail,
        "max relative variation " + describe(worst) + " across a and rho");
  }

  // 3d. Mixed raw cumulants are linear in a.
  {
    const double a_low = 0.5 * model.a();
    const RhoAlphaNigModel low = model.with_a(a_low);
    const double expected_ratio = model.a() / a_low;
    double worst = 0.0;
    for (const auto& i : indices_up_to(n, orders, true)) {
      const double hi = rho_alpha_cumulant(model, i, 1.0);
      const double lo = rho_alpha_cumulant(low, i, 1.0);
      if (lo == 0.0 && hi == 0.0) continue;
      worst = std::max(worst, relative_gap(hi / lo, expected_ratio));
    }
    add("a_linearity", worst <= 1e-12 ? CheckResult::Status::Pass : CheckResult::Status::Fail,
        "max relative ratio error " + describe(worst));
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.status == CheckResult::Status::Fail;
  });
}

}  // namespace levycum
