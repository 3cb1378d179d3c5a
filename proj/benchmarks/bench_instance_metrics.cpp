#include <benchmark/benchmark.h>

#include <random>

#include "alseg/instance_metrics.hpp"

namespace {

// Cubic instances on a regular lattice; `shift` offsets the prediction.
alseg::LabelVolume lattice(std::size_t side, std::size_t cell,
                           std::size_t shift) {
  alseg::LabelVolume v({side, side, side}, alseg::ValueKind::instance_labels);
  const std::size_t per = side / cell;
  for (std::size_t z = 0; z < side; ++z)
    for (std::size_t y = 0; y < side; ++y)
      for (std::size_t x = shift; x < side; ++x) {
        const std::size_t cz = z / cell, cy = y / cell, cx = (x - shift) / cell;
        if ((z % cell) < cell - 2 && (y % cell) < cell - 2) {
          v.at(z, y, x) =
              static_cast<alseg::Label>(1 + (cz * per + cy) * per + cx);
        }
      }
  return v;
}

void BM_Evaluate(benchmark::State& state) {
  const std::size_t side = state.range(0);
  const auto gt = lattice(side, 8, 0);
  const auto pred = lattice(side, 8, 1);
  const std::size_t threads = state.range(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alseg::evaluate(pred, gt, 0.5, threads));
  }
  state.SetItemsProcessed(state.iterations() * gt.size());
}
BENCHMARK(BM_Evaluate)
    ->Args({128, 1})
    ->Args({128, 4})
    ->Args({256, 1})
    ->Args({256, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
