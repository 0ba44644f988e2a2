#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quperman/discovery.hpp"
#include "quperman/duplication.hpp"
#include "quperman/frontend.hpp"
#include "quperman/metrics.hpp"

namespace quperman {

struct AnalysisConfig {
  DiscoveryOptions discovery = default_discovery_options();
  /// glob -> frontend id, first match wins
  std::vector<std::pair<std::string, std::string>> frontendOverrides;
  std::size_t windowSize = kDefaultWindowSize;
  NestedFunctions nested = NestedFunctions::Separate;
  /// Worker threads for per-file analysis. 0 = hardware concurrency.
  /// Never affects the output.
  std::size_t workers = 1;
};

struct AnalysisResult {
  std::string configDigest;
  std::vector<FileMetrics> files;  ///< sorted by path
  std::vector<std::string> warnings;
};

/// Canonical digest of everything in the config that can change results
/// (workers excluded).
std::string analysis_config_digest(const AnalysisConfig& config);

/// Discover, parse and measure every source under `root`. Output is a pure
/// function of the file bytes and config. Throws InputError for an
/// unreadable root and ConfigError for an invalid config.
AnalysisResult analyze_project(const std::filesystem::path& root, const AnalysisConfig& config);

/// `analysis.v1` document: stable key order, LF, trailing newline.
std::string to_analysis_document(const AnalysisResult& result);
AnalysisResult parse_analysis_document(std::string_view text);

}  // namespace quperman
