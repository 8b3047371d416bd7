#include <benchmark/benchmark.h>

#include "vcmbench/codec/reference_codec.hpp"
#include "vcmbench/dataset/splitmix64.hpp"
#include "vcmbench/dataset/synthetic.hpp"
#include "vcmbench/metrics/bdrate.hpp"
#include "vcmbench/metrics/map.hpp"
#include "vcmbench/packing/packing.hpp"

namespace {

using namespace vcmbench;

LoadedDataset scene(int side) {
  SyntheticSceneSpec s;
  s.width = s.height = side;
  s.num_items = 1;
  s.seed = 1;
  s.noise_amplitude = 0.1;
  return generate_synthetic_dataset(s);
}

void BM_ReferenceEncode(benchmark::State& state) {
  const auto data = scene(static_cast<int>(state.range(0)));
  ReferenceCodec codec;
  const CodecParams params{static_cast<int>(state.range(1)), TemporalMode::kAllIntra, 1};
  for (auto _ : state) benchmark::DoNotOptimize(codec.encode(data.frames, params, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(data.frames[0].sample_count()));
}
BENCHMARK(BM_ReferenceEncode)->Args({64, 28})->Args({256, 28})->Args({256, 4});

void BM_ReferenceDecode(benchmark::State& state) {
  const auto data = scene(static_cast<int>(state.range(0)));
  ReferenceCodec codec;
  const auto stream = codec.encode(data.frames, {28, TemporalMode::kAllIntra, 1}, {});
  for (auto _ : state) benchmark::DoNotOptimize(codec.decode(stream, {}));
}
BENCHMARK(BM_ReferenceDecode)->Arg(64)->Arg(256);

void BM_PackUnpack(benchmark::State& state) {
  SplitMix64 rng(5);
  FeatureTensorSet set;
  const int channels = static_cast<int>(state.range(0));
  for (int side : {64, 32, 16, 8}) {
    FeatureTensor t = FeatureTensor::zeros({channels, side, side});
    for (auto& v : t.values) v = static_cast<float>(rng.uniform() * 8 - 4);
    set.tensors.push_back(std::move(t));
  }
  for (auto _ : state) benchmark::DoNotOptimize(unpack(pack(set, 10)));
}
BENCHMARK(BM_PackUnpack)->Arg(4)->Arg(64);

void BM_EvaluateMap(benchmark::State& state) {
  SplitMix64 rng(9);
  std::vector<GroundTruthObject> truth;
  std::vector<Detection> dets;
  const int images = static_cast<int>(state.range(0));
  for (int i = 0; i < images; ++i) {
    const std::string id = "img" + std::to_string(i);
    for (int k = 0; k < 8; ++k) {
      const double x = rng.uniform() * 200, y = rng.uniform() * 200;
      truth.push_back({id, "object", {x, y, x + 30, y + 30}, {}, {}});
      dets.push_back({id, "object", {x + 2, y - 1, x + 31, y + 29}, rng.uniform()});
      dets.push_back({id, "object", {y, x, y + 20, x + 20}, rng.uniform()});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_map(dets, truth));
}
BENCHMARK(BM_EvaluateMap)->Arg(20)->Arg(500);

void BM_BdRate(benchmark::State& state) {
  RateAccuracyCurve a{"a", {}}, t{"t", {}};
  const double rates_a[] = {100, 200, 400, 800}, rates_t[] = {80, 150, 350, 700};
  const double acc[] = {0.4, 0.6, 0.8, 0.9};
  for (int i = 0; i < 4; ++i) {
    a.points.push_back({"a", 40 - 12 * i, rates_a[i], acc[i]});
    t.points.push_back({"t", 40 - 12 * i, rates_t[i], acc[i]});
  }
  for (auto _ : state) benchmark::DoNotOptimize(bd_rate(a, t));
}
BENCHMARK(BM_BdRate);

}  // namespace

BENCHMARK_MAIN();
