// Throughput benchmarks for the page-scale building blocks and the full
// segmentation pipeline, all on a typical 1400 x 1000 page.

#include <benchmark/benchmark.h>

#include <random>

#include "scriptorium/distance.hpp"
#include "scriptorium/energy.hpp"
#include "scriptorium/filters.hpp"
#include "scriptorium/pipeline.hpp"
#include "scriptorium/seams.hpp"
#include "scriptorium/synth.hpp"

namespace {

constexpr int kRows = 1400;
constexpr int kCols = 1000;

scriptorium::GrayRaster page_raster() {
  scriptorium::GrayRaster out(kRows, kCols);
  std::mt19937_64 engine(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = unit(engine);
  return out;
}

scriptorium::MaskRaster page_mask() {
  scriptorium::MaskRaster out(kRows, kCols, 0);
  std::mt19937_64 engine(12);
  std::uniform_int_distribution<int> row(0, kRows - 1), col(0, kCols - 1);
  for (int i = 0; i < kRows * kCols / 50; ++i) out(row(engine), col(engine)) = 1;
  return out;
}

const scriptorium::SynthPage& synthetic_page() {
  static const scriptorium::SynthPage page = [] {
    scriptorium::SynthSpec spec;
    spec.seed = 5;
    return scriptorium::generate_page(spec);
  }();
  return page;
}

void BM_BoxFilter(benchmark::State& state) {
  const scriptorium::GrayRaster in = page_raster();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scriptorium::box_filter(in, k));
  }
}
BENCHMARK(BM_BoxFilter)->Arg(32)->Arg(501);

void BM_PlusFilter(benchmark::State& state) {
  const scriptorium::GrayRaster in = page_raster();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scriptorium::plus_filter(in, 32));
  }
}
BENCHMARK(BM_PlusFilter);

void BM_DistanceTransform(benchmark::State& state) {
  std::vector<scriptorium::Point> seeds;
  std::mt19937_64 engine(13);
  std::uniform_real_distribution<double> row(0.0, kRows - 1.0);
  std::uniform_real_distribution<double> col(0.0, kCols - 1.0);
  for (int i = 0; i < 700; ++i) seeds.push_back({row(engine), col(engine)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scriptorium::distance_to_nearest(seeds, kRows, kCols));
  }
}
BENCHMARK(BM_DistanceTransform);

void BM_TotalEnergy(benchmark::State& state) {
  const scriptorium::MaskRaster mask = page_mask();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scriptorium::total_energy(mask, scriptorium::SmoothingConfig{}));
  }
}
BENCHMARK(BM_TotalEnergy);

void BM_SeamField(benchmark::State& state) {
  const scriptorium::GrayRaster energy = page_raster();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scriptorium::SeamField(
        energy, 3.0, scriptorium::SeamDirection::LeftToRight));
  }
}
BENCHMARK(BM_SeamField);

void BM_CastAll(benchmark::State& state) {
  const scriptorium::GrayRaster energy = page_raster();
  scriptorium::SeamParams params;
  params.alpha = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scriptorium::cast_all(energy, params));
  }
}
BENCHMARK(BM_CastAll)->Arg(60)->Arg(120);

void BM_SegmentPage(benchmark::State& state) {
  const scriptorium::SynthPage& page = synthetic_page();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scriptorium::segment_page(page.label, scriptorium::PipelineConfig{}));
  }
}
BENCHMARK(BM_SegmentPage)->Unit(benchmark::kMillisecond);

void BM_GeneratePage(benchmark::State& state) {
  scriptorium::SynthSpec spec;
  spec.seed = 9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scriptorium::generate_page(spec));
  }
}
BENCHMARK(BM_GeneratePage)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
