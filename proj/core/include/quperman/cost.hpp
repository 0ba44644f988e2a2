#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quperman {

/// Investment barriers that block further maintainability improvement
/// until paid for.
enum class BarrierCategory {
  TestAdequacy,
  ArchitecturalChange,
  DeveloperTraining,
  KnowledgeRecovery,
  DomainKnowledge,
  RegulatoryAspects,
  MajorCodeSmells,
};

inline constexpr std::array<BarrierCategory, 7> kBarrierTaxonomy = {
    BarrierCategory::TestAdequacy,      BarrierCategory::ArchitecturalChange, BarrierCategory::DeveloperTraining,
    BarrierCategory::KnowledgeRecovery, BarrierCategory::DomainKnowledge,     BarrierCategory::RegulatoryAspects,
    BarrierCategory::MajorCodeSmells,
};

std::string_view to_string(BarrierCategory category);
BarrierCategory parse_barrier_category(std::string_view text);

/// Illustrative effort-unit defaults, all overridable:
/// ArchitecturalChange 100, RegulatoryAspects 80, KnowledgeRecovery 60,
/// TestAdequacy 50, MajorCodeSmells 50, DeveloperTraining 40, DomainKnowledge 40.
double default_fixed_cost(BarrierCategory category);
std::string_view default_rationale(BarrierCategory category);

struct InvestmentBarrier {
  BarrierCategory category = BarrierCategory::TestAdequacy;
  double position = 0;
  double fixedCost = 0;
  std::string rationale;

  bool operator==(const InvestmentBarrier&) const = default;
};

/// One slot of a category plan; unset fields fall back to the defaults.
struct BarrierPlanItem {
  BarrierCategory category = BarrierCategory::TestAdequacy;
  std::optional<double> fixedCost;
  std::optional<std::string> rationale;
};

/// Barriers at h0 + i*spacing (i = 1, 2, ...) up to 10. Categories come
/// from `plan` in order, cycling; an empty plan cycles the seven-item
/// taxonomy. Throws ParameterError for spacing <= 0.
std::vector<InvestmentBarrier> place_barriers(double currentLevel, double spacing,
                                              std::span<const BarrierPlanItem> plan = {});

struct CostModel {
  double currentLevel = 1;
  double baseMarginalCost = 10;  ///< effort units per health point at a segment start
  double escalation = 2;         ///< marginal cost multiplier per health point
  double barrierSpacing = 1.5;
  std::vector<InvestmentBarrier> barrierPlan;  ///< strictly increasing positions in (h0, 10]
};

/// Model with barriers placed at the default equidistant positions.
CostModel make_cost_model(double currentLevel, double baseMarginalCost = 10, double escalation = 2,
                          double barrierSpacing = 1.5, std::span<const BarrierPlanItem> plan = {});

/// Throws ParameterError / DomainError on an ill-formed model.
void validate(const CostModel& model);

/// Start of the escalation segment containing `health`: h0 or the last
/// barrier position at or below it.
double segment_start(const CostModel& model, double health);

/// m(x) = c0 * gamma^(x - s).
double marginal_cost(const CostModel& model, double health);

/// Integral of c0 * gamma^(x - s) over [a, b]: c0 / ln(gamma) * (gamma^(b-s) - gamma^(a-s)).
double segment_cost(double baseMarginalCost, double escalation, double segmentStart, double a, double b);

struct CostBreakdown {
  double totalCost = 0;
  double refactoringCost = 0;  ///< sum of segment integrals
  double barrierCost = 0;      ///< sum of crossed fixed costs
  std::vector<InvestmentBarrier> barriersCrossed;
};

/// Improvement cost from `from` to `to`. Barriers in (from, to] are crossed:
/// each adds its fixed cost and restarts escalation at its position.
/// Throws DomainError when to < from, from < h0, or either lies outside [1, 10].
CostBreakdown cost_to_target(const CostModel& model, double from, double to);

}  // namespace quperman
