#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "quperman/analysis.hpp"
#include "quperman/health.hpp"

namespace quperman {

/// The single config document shared by analysis and scoring.
///
/// {
///   "include": [globs], "exclude": [globs],
///   "frontends": {"glob": "frontend-id"},
///   "windowSize": 25, "nestedFunctions": "separate" | "merged",
///   "workers": 4, "weighting": "byLoc" | "byChangeFrequency",
///   "thresholds": {"longFunctionLoc": 70, ...}
/// }
///
/// Every key is optional; unknown keys are rejected.
struct ToolConfig {
  AnalysisConfig analysis;
  ThresholdConfig thresholds;
  Weighting weighting = Weighting::ByLoc;
};

ToolConfig parse_config(std::string_view text);
ToolConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form (workers omitted), the input of config_digest.
std::string canonical_config(const ToolConfig& config);
std::string config_digest(const ToolConfig& config);

}  // namespace quperman
