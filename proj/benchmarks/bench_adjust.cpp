#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mtcorr/adjust.hpp"

namespace {

mtc::adjust::PValueBatch make_batch(std::size_t m) {
  std::mt19937_64 gen(m);
  std::uniform_real_distribution<double> unif;
  std::vector<double> p(m);
  for (auto& v : p) v = unif(gen) < 0.3 ? 0.05 * unif(gen) : unif(gen);
  return mtc::adjust::PValueBatch::from_values(std::move(p));
}

void BM_Adjust(benchmark::State& state, mtc::adjust::Method method) {
  const auto batch = make_batch(static_cast<std::size_t>(state.range(0)));
  const mtc::adjust::MethodParams params;
  for (auto _ : state) {
    auto out = mtc::adjust::apply(method, batch, params);
    benchmark::DoNotOptimize(out.effective_alpha);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Adjust, bonferroni, mtc::adjust::Method::bonferroni)->Range(100, 100000);
BENCHMARK_CAPTURE(BM_Adjust, holm, mtc::adjust::Method::holm)->Range(100, 100000);
BENCHMARK_CAPTURE(BM_Adjust, bh, mtc::adjust::Method::bh)->Range(100, 100000);
BENCHMARK_CAPTURE(BM_Adjust, bea, mtc::adjust::Method::bea)->Range(100, 100000);
