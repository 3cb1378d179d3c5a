#include <benchmark/benchmark.h>

#include <random>

#include "alseg/label_fusion.hpp"

namespace {

alseg::LabelVolume blobs(alseg::Shape3 s, double p) {
  std::mt19937_64 gen(3);
  std::bernoulli_distribution fg(p);
  std::vector<alseg::Label> v(s.count());
  for (auto& x : v) x = fg(gen);
  return alseg::LabelVolume(s, alseg::ValueKind::binary_mask, std::move(v));
}

void BM_ConnectedComponents(benchmark::State& state) {
  const std::size_t side = state.range(0);
  const auto mask = blobs({side, side, side}, 0.3);
  const auto conn = state.range(1) == 6 ? alseg::Connectivity::face6
                                        : alseg::Connectivity::full26;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alseg::connected_components(mask, conn));
  }
  state.SetItemsProcessed(state.iterations() * mask.size());
}
BENCHMARK(BM_ConnectedComponents)
    ->Args({64, 6})
    ->Args({64, 26})
    ->Args({128, 6})
    ->Args({128, 26})
    ->Unit(benchmark::kMillisecond);

}  // namespace
