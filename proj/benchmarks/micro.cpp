#include <benchmark/benchmark.h>

#include <random>

#include "ctxsfc/cover_merge.hpp"
#include "ctxsfc/lzw.hpp"
#include "ctxsfc/networks.hpp"
#include "ctxsfc/objectives.hpp"
#include "ctxsfc/universal_curves.hpp"

using namespace ctxsfc;

namespace {

Image noise_image(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  Image img(side, side);
  for (double& v : img.pixels()) v = u(rng);
  return img;
}

void BM_SfcFromWeights(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const DualGraph dual(GridSize(side, side));
  const EdgeWeights w = dafner_weights(noise_image(side, 1), dual);
  for (auto _ : state) benchmark::DoNotOptimize(sfc_from_weights(dual, w));
}
BENCHMARK(BM_SfcFromWeights)->Arg(8)->Arg(32)->Arg(128);

void BM_Mst(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const DualGraph dual(GridSize(side, side));
  const EdgeWeights w = dafner_weights(noise_image(side, 2), dual);
  for (auto _ : state) benchmark::DoNotOptimize(minimum_spanning_tree(dual, w));
}
BENCHMARK(BM_Mst)->Arg(32)->Arg(128);

void BM_LzwEncode(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(state.range(0)));
  // Low-entropy input, like a digit scan.
  for (auto& b : bytes) b = (rng() % 8 == 0) ? static_cast<std::uint8_t>(rng()) : 0;
  for (auto _ : state) benchmark::DoNotOptimize(lzw::encode(bytes));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_LzwEncode)->Arg(1024)->Arg(65536);

void BM_Autocorrelation(benchmark::State& state) {
  const Image img = noise_image(32, 4);
  const SfcOrder order = universal_order(CurveKind::hilbert, GridSize(32, 32));
  for (auto _ : state) benchmark::DoNotOptimize(autocorrelation(flatten(img, order), 6));
}
BENCHMARK(BM_Autocorrelation);

void BM_GeneratorForward(benchmark::State& state) {
  const WeightGenerator gen(GridSize(32, 32), {}, 5);
  std::vector<Image> batch;
  for (int i = 0; i < state.range(0); ++i) batch.push_back(noise_image(32, 10 + static_cast<std::uint64_t>(i)));
  for (auto _ : state) benchmark::DoNotOptimize(gen.forward(batch, nullptr));
}
BENCHMARK(BM_GeneratorForward)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
