#include <benchmark/benchmark.h>

#include <random>

#include "alseg/coreset.hpp"
#include "alseg/embedding.hpp"

namespace {

alseg::EmbeddingMatrix gaussian(std::size_t n, std::size_t dim) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> g;
  std::vector<std::string> ids;
  std::vector<double> values(n * dim);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  for (auto& v : values) v = g(gen);
  return alseg::normalize_rows(alseg::EmbeddingMatrix(ids, dim, values));
}

// 1024 patches as in a typical tiled EM volume, 256 selected.
void BM_KCenterGreedy(benchmark::State& state) {
  const auto e = gaussian(state.range(0), 320);
  const std::size_t threads = state.range(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alseg::kcenter_greedy(e, 256, 3, 7, {threads}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 256);
}
BENCHMARK(BM_KCenterGreedy)
    ->Args({1024, 1})
    ->Args({1024, 4})
    ->Args({8192, 1})
    ->Args({8192, 4})
    ->Unit(benchmark::kMillisecond);

void BM_KCenterPrecomputed(benchmark::State& state) {
  const auto e = gaussian(state.range(0), 320);
  const auto d = alseg::cosine_distance_matrix(e);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alseg::kcenter_greedy(d, e.ids(), 256, 3, 7));
  }
}
BENCHMARK(BM_KCenterPrecomputed)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DistanceMatrix(benchmark::State& state) {
  const auto e = gaussian(state.range(0), 320);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alseg::cosine_distance_matrix(e));
  }
}
BENCHMARK(BM_DistanceMatrix)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
