#include <benchmark/benchmark.h>

#include "levycum/bell_engine.hpp"
#include "levycum/mc_engine.hpp"
#include "levycum/series.hpp"

namespace {

levycum::RhoAlphaNigModel reference_model() {
  Eigen::MatrixXd rho(2, 2);
  rho << 1.0, 0.5, 0.5, 1.0;
  return levycum::RhoAlphaNigModel({85.4175, 64.2544}, {0.0248, 0.0335}, {-8.8886, -13.5988},
                                   rho, 1.05);
}

void BM_EnumeratePartitions(benchmark::State& state) {
  const levycum::MultiIndex index{static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1))};
  for (auto _ : state) {
    auto partitions = levycum::enumerate_partitions(index);
    benchmark::DoNotOptimize(partitions);
  }
}
BENCHMARK(BM_EnumeratePartitions)->Args({2, 2})->Args({3, 3})->Args({5, 5});

void BM_BellCumulant(benchmark::State& state) {
  Eigen::MatrixXd mixing(2, 2);
  mixing << 1.0, 0.4, -0.3, 1.0;
  std::vector<levycum::UnivariateCumulants> bases = {
      levycum::UnivariateCumulants::gaussian(0.1, 1.0),
      levycum::UnivariateCumulants::gaussian(-0.2, 0.5)};
  levycum::SubordinatedModel model{
      mixing, bases,
      levycum::JointCumulantProvider::comonotone(
          levycum::UnivariateCumulants::inverse_gaussian(1.0, 1.0), 2)};
  const int half = static_cast<int>(state.range(0));
  const levycum::MultiIndex index{half, half};
  for (auto _ : state) {
    benchmark::DoNotOptimize(levycum::cumulant(model, index));
  }
}
BENCHMARK(BM_BellCumulant)->Arg(1)->Arg(2)->Arg(3);

void BM_SeriesCompose(benchmark::State& state) {
  Eigen::MatrixXd mixing(2, 2);
  mixing << 1.0, 0.4, -0.3, 1.0;
  std::vector<levycum::UnivariateCumulants> bases = {
      levycum::UnivariateCumulants::gaussian(0.1, 1.0),
      levycum::UnivariateCumulants::gaussian(-0.2, 0.5)};
  levycum::SubordinatedModel model{
      mixing, bases,
      levycum::JointCumulantProvider::comonotone(
          levycum::UnivariateCumulants::inverse_gaussian(1.0, 1.0), 2)};
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(levycum::subordinated_cgf_series(model, degree));
  }
}
BENCHMARK(BM_SeriesCompose)->Arg(4)->Arg(6)->Arg(8);

void BM_RhoAlphaCumulant(benchmark::State& state) {
  const auto model = reference_model();
  const int half = static_cast<int>(state.range(0));
  const levycum::MultiIndex index{half, half};
  for (auto _ : state) {
    benchmark::DoNotOptimize(levycum::rho_alpha_cumulant(model, index, 1.0));
  }
}
BENCHMARK(BM_RhoAlphaCumulant)->Arg(1)->Arg(2)->Arg(3);

void BM_SampleIg(benchmark::State& state) {
  const std::int64_t count = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto draws = levycum::sample_ig(1.0, 1.0, count, seed++);
    benchmark::DoNotOptimize(draws);
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_SampleIg)->Arg(1 << 12)->Arg(1 << 16);

void BM_SimulatePaths(benchmark::State& state) {
  levycum::SimulationPlan plan;
  plan.model = reference_model();
  plan.t = 1.0;
  plan.num_paths = state.range(0);
  plan.seed = 7;
  plan.num_workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto increments = levycum::simulate_increments(plan);
    benchmark::DoNotOptimize(increments);
  }
  state.SetItemsProcessed(state.iterations() * plan.num_paths);
}
BENCHMARK(BM_SimulatePaths)->Args({1 << 14, 1})->Args({1 << 14, 4});

}  // namespace

BENCHMARK_MAIN();
