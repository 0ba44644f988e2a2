#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/benchmark.hpp"
#include "quperman/benefit.hpp"
#include "quperman/cost.hpp"
#include "quperman/gate.hpp"

namespace quperman {

struct GateSpec {
  GatePolicy policy = GatePolicy::NoDecline;
  std::optional<double> floorLevel;
};

/// Benchmark context of a scenario. `scores` is empty when only summary
/// percentiles are known, in which case no target percentile is reported.
struct ScenarioBenchmark {
  BenchmarkDistribution distribution;
  std::vector<double> scores;
};

struct RoadmapScenario {
  std::string projectId;
  double currentLevel = 1;
  double targetLevel = 1;
  BenefitCurve curve;
  CostModel costModel;
  GateSpec gate;
  std::optional<ScenarioBenchmark> benchmark;
};

/// Throws DomainError / ParameterError / InputError on an invalid scenario.
void validate(const RoadmapScenario& scenario);

enum class LeadersGap { BelowLaggards, Between, AboveLeaders };
std::string_view to_string(LeadersGap gap);

/// Health interval over which marginal cost escalates before the next barrier.
struct EscalationZone {
  double from = 0;
  double to = 0;
  bool endsAtBarrier = false;  ///< [from, to) when true, [from, 10] otherwise
};

struct TargetEvaluation {
  std::string projectId;
  double currentLevel = 0;
  double targetLevel = 0;
  double benefitCurrent = 0;
  double benefitTarget = 0;
  double benefitDelta = 0;
  double totalCost = 0;
  double refactoringCost = 0;
  double barrierCost = 0;
  std::vector<InvestmentBarrier> barriersCrossed;
  EscalationZone escalationZone;
  std::optional<double> targetPercentile;
  std::optional<LeadersGap> leadersGapNote;
};

/// Throws DomainError when the target lies below the current level.
TargetEvaluation evaluate_target(const RoadmapScenario& scenario);

enum class CostBand { Green, Yellow, Red };
std::string_view to_string(CostBand band);

struct BenefitPoint {
  double health = 0;
  double benefit = 0;
};

struct CostPoint {
  double health = 0;
  double marginalCost = 0;
  CostBand band = CostBand::Green;
};

struct RoadmapMarkers {
  double current = 0;
  double target = 0;
  Breakpoints breakpoints;
  std::vector<InvestmentBarrier> barriers;
  double gateLevel = 0;  ///< floor level, or the current level under noDecline
  std::optional<double> laggards;
  std::optional<double> leaders;
};

struct RoadmapData {
  TargetEvaluation evaluation;
  std::vector<BenefitPoint> benefitSeries;
  std::vector<CostPoint> costSeries;
  RoadmapMarkers markers;
};

inline constexpr std::size_t kRoadmapSamples = 201;

/// Benefit series over [1, 10] and marginal-cost series over [h0, 10], each
/// with `samples` points, plus all view markers.
RoadmapData build_roadmap(const RoadmapScenario& scenario, std::size_t samples = kRoadmapSamples);

/// Parses `scenario.v1`. A `benchmark.filter` section is resolved against
/// `store`; inline `p10/p50/p90` are used as given. When the scenario names
/// no benchmark but a store is supplied, the whole store is used.
RoadmapScenario parse_scenario(std::string_view text, const BenchmarkStore* store = nullptr);

/// scenario.v1 with every parameter at its default.
std::string default_scenario_document();

/// `evaluation.v1`
std::string to_evaluation_document(const TargetEvaluation& evaluation);
/// `roadmap.v1`
std::string to_roadmap_document(const RoadmapData& roadmap);

}  // namespace quperman
