#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mtcorr/cohort.hpp"
#include "mtcorr/logistic.hpp"
#include "mtcorr/random.hpp"

namespace {

void BM_LogisticFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = mtc::numerics::derive_stream(1, "bench", 0);
  std::vector<std::uint8_t> y(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = rng.bernoulli(0.5) ? 1 : 0;
    x[i] = rng.normal() + 0.2 * y[i];
  }
  for (auto _ : state) {
    auto fit = mtc::numerics::fit_logistic_univariate(y, x);
    benchmark::DoNotOptimize(fit.p_value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MarkerScan(benchmark::State& state) {
  mtc::simulate::CohortConfig config;
  config.n_patients = static_cast<std::size_t>(state.range(0));
  config.m_biomarkers = static_cast<std::size_t>(state.range(1));
  config.associated_fraction = 0.25;
  const auto data = mtc::simulate::generate_cohort(config, 0);
  for (auto _ : state) {
    auto scan = mtc::simulate::compute_pvalues(data);
    benchmark::DoNotOptimize(scan.batch.size());
  }
}

void BM_GenerateCohort(benchmark::State& state) {
  mtc::simulate::CohortConfig config;
  config.n_patients = static_cast<std::size_t>(state.range(0));
  config.m_biomarkers = static_cast<std::size_t>(state.range(1));
  config.associated_fraction = 0.25;
  std::size_t r = 0;
  for (auto _ : state) {
    auto data = mtc::simulate::generate_cohort(config, r++);
    benchmark::DoNotOptimize(data.expression.cols());
  }
}

}  // namespace

BENCHMARK(BM_LogisticFit)->Arg(300)->Arg(1000);
BENCHMARK(BM_MarkerScan)->Args({300, 100})->Args({1000, 1000});
BENCHMARK(BM_GenerateCohort)->Args({1000, 1000});
