#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "quperman/analysis.hpp"
#include "quperman/duplication.hpp"
#include "quperman/health.hpp"

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(QUPERMAN_SOURCE_DIR) / "tests" / "fixtures" / "corpus";

void BM_AnalyzeCorpus(benchmark::State& state) {
  quperman::AnalysisConfig config;
  config.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result = quperman::analyze_project(kCorpus, config);
    benchmark::DoNotOptimize(result.files.data());
  }
}
BENCHMARK(BM_AnalyzeCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AssessHealth(benchmark::State& state) {
  const auto analysis = quperman::analyze_project(kCorpus, {});
  for (auto _ : state) {
    auto report = quperman::assess_health(analysis.files, {}, quperman::Weighting::ByLoc, nullptr,
                                          analysis.configDigest);
    benchmark::DoNotOptimize(report.project.score);
  }
}
BENCHMARK(BM_AssessHealth);

// Streams drawn from a small vocabulary so windows repeat often.
std::vector<std::vector<std::string>> random_streams(std::size_t streams, std::size_t length) {
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<int> pick(0, 11);
  std::vector<std::vector<std::string>> out(streams);
  for (auto& s : out) {
    s.reserve(length);
    for (std::size_t i = 0; i < length; ++i) s.push_back("t" + std::to_string(pick(rng)));
  }
  return out;
}

void BM_DuplicationRatio(benchmark::State& state) {
  const auto streams = random_streams(16, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto ratios = quperman::duplication_ratio(streams);
    benchmark::DoNotOptimize(ratios.data());
  }
  state.SetItemsProcessed(state.iterations() * 16 * state.range(0));
}
BENCHMARK(BM_DuplicationRatio)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace
