#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/metrics.hpp"

namespace quperman {

enum class SmellKind {
  LongFunction,
  ComplexFunction,
  DeepNesting,
  ManyArguments,
  BrainMethod,
  GodModule,
  Duplication,
  LargeFile,
  LowComment,
};

enum class Severity { Minor, Major, Critical };

std::string_view to_string(SmellKind kind);
std::string_view to_string(Severity severity);
SmellKind parse_smell_kind(std::string_view text);
Severity parse_severity(std::string_view text);

/// Default trigger thresholds. Every "Above" predicate is strict (`>`),
/// LowComment's density predicate is strict `<`.
struct ThresholdConfig {
  double longFunctionLoc = 70;
  double complexFunctionCyclomatic = 10;
  double deepNesting = 4;
  double manyArguments = 5;
  double brainMethodLoc = 70;
  double brainMethodCyclomatic = 10;
  double brainMethodNesting = 3;
  double godModuleFunctions = 30;
  double godModuleLoc = 1000;
  double duplicationRatio = 0.15;
  double largeFileLoc = 600;
  double lowCommentDensity = 0.02;
  double lowCommentMinLoc = 200;

  bool operator==(const ThresholdConfig&) const = default;
};

struct Evidence {
  std::string metric;
  double observed = 0;
  double threshold = 0;
  bool below = false;  ///< violated when observed < threshold instead of >

  bool operator==(const Evidence&) const = default;
};

struct SmellFinding {
  SmellKind kind = SmellKind::LongFunction;
  std::string path;
  int startLine = 1;
  int endLine = 1;
  std::string function;  ///< empty for file-level smells
  Severity severity = Severity::Minor;
  std::vector<Evidence> evidence;

  bool operator==(const SmellFinding&) const = default;
};

/// observed / threshold >= 4 -> critical, >= 2 -> major, otherwise minor.
Severity severity_for_ratio(double ratio);

/// Points deducted per finding: minor 0.5, major 1.0, critical 2.0.
double penalty_for(Severity severity);

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 10.0;

struct FileHealth {
  std::string path;
  double score = kMaxScore;
  std::vector<SmellFinding> findings;
  std::map<SmellKind, double> penaltyBreakdown;

  bool operator==(const FileHealth&) const = default;
};

enum class Weighting { ByLoc, ByChangeFrequency };
std::string_view to_string(Weighting weighting);
Weighting parse_weighting(std::string_view text);

struct ProjectHealth {
  double score = kMaxScore;
  std::vector<FileHealth> files;
  Weighting weighting = Weighting::ByLoc;
  std::string weightsDigest;
};

/// Per-path change counts used for hotspot weighting.
using ChangeCounts = std::map<std::string, long long, std::less<>>;

/// Parses `uniq -c` style lines ("<count> <path>"). Blank lines and lines
/// starting with '#' are ignored. Throws InputError on malformed lines.
ChangeCounts parse_change_counts(std::string_view text);

struct MaintainabilityIndexReport {
  std::string path;
  double mi = 0;
  double normalizedMi = 0;
  double volumeTerm = 0;   ///< 5.2 ln(max(mean V, 1))
  double cyclomaticTerm = 0;  ///< 0.23 mean CC
  double locTerm = 0;      ///< 16.2 ln(max(totalLoc, 1))
  double commentTerm = 0;  ///< 50 sin(sqrt(2.4 density))
};

/// All findings whose predicate holds, ordered by line then kind.
std::vector<SmellFinding> detect_smells(const FileMetrics& file, const ThresholdConfig& thresholds = {});

/// score = clamp(10 - sum of penalties, 1, 10).
FileHealth score_file(std::string path, std::vector<SmellFinding> findings);

/// Weighted mean of file scores. byLoc uses max(totalLoc, 1); byChangeFrequency
/// multiplies that by 1 + log2(1 + changes). Throws InputError for an empty
/// list, misaligned inputs, or a path missing from `changeCounts`.
ProjectHealth aggregate_project(std::vector<FileHealth> files, const std::vector<FileMetrics>& metrics,
                                Weighting weighting, const ChangeCounts* changeCounts = nullptr);

/// Classical four-term index with the sine comment bonus.
MaintainabilityIndexReport maintainability_index(const FileMetrics& file);

struct HealthReport {
  std::string configDigest;
  ProjectHealth project;
  std::vector<MaintainabilityIndexReport> maintainability;  ///< aligned with project.files
};

/// detect_smells + score_file per file, then aggregate_project.
HealthReport assess_health(const std::vector<FileMetrics>& files, const ThresholdConfig& thresholds,
                           Weighting weighting, const ChangeCounts* changeCounts, std::string configDigest);

/// `health.v1` document.
std::string to_health_document(const HealthReport& report);
HealthReport parse_health_document(std::string_view text);

}  // namespace quperman
