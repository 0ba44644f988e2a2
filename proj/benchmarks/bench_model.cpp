#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quperman/benchmark.hpp"
#include "quperman/benefit.hpp"
#include "quperman/cost.hpp"
#include "quperman/roadmap.hpp"

namespace {

const std::filesystem::path kData = std::filesystem::path(QUPERMAN_SOURCE_DIR) / "data";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_BenefitValue(benchmark::State& state) {
  const quperman::BenefitCurve curve;
  double h = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quperman::benefit_value(curve, h));
    h = h + 0.001 > 10.0 ? 1.0 : h + 0.001;
  }
}
BENCHMARK(BM_BenefitValue);

void BM_DeriveBreakpoints(benchmark::State& state) {
  const quperman::BenefitCurve curve;
  for (auto _ : state) benchmark::DoNotOptimize(quperman::derive_breakpoints(curve));
}
BENCHMARK(BM_DeriveBreakpoints);

void BM_CostToTarget(benchmark::State& state) {
  // Spacing shrinks with the argument, so more barriers get crossed.
  const double spacing = 9.0 / static_cast<double>(state.range(0));
  const auto model = quperman::make_cost_model(1.0, 10, 2, spacing);
  for (auto _ : state) {
    auto c = quperman::cost_to_target(model, 1.0, 10.0);
    benchmark::DoNotOptimize(c.totalCost);
  }
}
BENCHMARK(BM_CostToTarget)->Arg(1)->Arg(8)->Arg(64);

void BM_BuildRoadmap(benchmark::State& state) {
  const auto store = quperman::load_store(kData / "sample-bench.v1.jsonl");
  const auto scenario = quperman::parse_scenario(slurp(kData / "scenario.golden.json"), &store);
  for (auto _ : state) {
    auto doc = quperman::to_roadmap_document(quperman::build_roadmap(scenario));
    benchmark::DoNotOptimize(doc.data());
  }
}
BENCHMARK(BM_BuildRoadmap)->Unit(benchmark::kMicrosecond);

void BM_Distribution(benchmark::State& state) {
  quperman::BenchmarkStore store;
  for (int i = 0; i < state.range(0); ++i) {
    quperman::ingest_entry(store, 1.0 + (i * 7919 % 9001) / 1000.0, "p" + std::to_string(i), {}, "2024-01-01T00:00:00Z");
  }
  for (auto _ : state) benchmark::DoNotOptimize(quperman::distribution(store).p50);
}
BENCHMARK(BM_Distribution)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
