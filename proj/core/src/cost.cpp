#include "quperman/cost.hpp"

#include <cmath>

#include "quperman/benefit.hpp"
#include "quperman/error.hpp"

namespace quperman {

namespace {

constexpr double kPositionTolerance = 1e-9;

struct CategoryInfo {
  BarrierCategory category;
  std::string_view name;
  double fixedCost;
  std::string_view rationale;
};

constexpr CategoryInfo kCategories[] = {
    {BarrierCategory::TestAdequacy, "TestAdequacy", 50, "Test coverage too thin for safe restructuring"},
    {BarrierCategory::ArchitecturalChange, "ArchitecturalChange", 100, "Further gains need a structural redesign"},
    {BarrierCategory::DeveloperTraining, "DeveloperTraining", 40, "Team skills must be built up first"},
    {BarrierCategory::KnowledgeRecovery, "KnowledgeRecovery", 60, "Lost system knowledge must be rebuilt"},
    {BarrierCategory::DomainKnowledge, "DomainKnowledge", 40, "Business domain expertise is required"},
    {BarrierCategory::RegulatoryAspects, "RegulatoryAspects", 80, "Changes require compliance review"},
    {BarrierCategory::MajorCodeSmells, "MajorCodeSmells", 50, "Large smells need dedicated rework"},
};

const CategoryInfo& info(BarrierCategory c) {
  for (const auto& x : kCategories) {
    if (x.category == c) return x;
  }
  return kCategories[0];
}

void check_level(double h, const char* what) {
  if (!(h >= kHealthMin && h <= kHealthMax)) {
    throw DomainError(std::string(what) + " " + std::to_string(h) + " lies outside [1, 10]");
  }
}

}  // namespace

std::string_view to_string(BarrierCategory category) { return info(category).name; }

BarrierCategory parse_barrier_category(std::string_view text) {
  for (const auto& x : kCategories) {
    if (x.name == text) return x.category;
  }
  throw InputError("unknown barrier category '" + std::string(text) + "'");
}

double default_fixed_cost(BarrierCategory category) { return info(category).fixedCost; }

std::string_view default_rationale(BarrierCategory category) { return info(category).rationale; }

std::vector<InvestmentBarrier> place_barriers(double currentLevel, double spacing,
                                              std::span<const BarrierPlanItem> plan) {
  if (!(spacing > 0) || !std::isfinite(spacing)) throw ParameterError("barrier spacing must be > 0");
  check_level(currentLevel, "current level");
  std::vector<InvestmentBarrier> out;
  for (std::size_t i = 1;; ++i) {
    double pos = currentLevel + static_cast<double>(i) * spacing;
    if (pos > kHealthMax + kPositionTolerance) break;
    if (std::abs(pos - kHealthMax) <= kPositionTolerance) pos = kHealthMax;
    InvestmentBarrier b;
    b.position = pos;
    if (plan.empty()) {
      b.category = kBarrierTaxonomy[(i - 1) % kBarrierTaxonomy.size()];
      b.fixedCost = default_fixed_cost(b.category);
      b.rationale = default_rationale(b.category);
    } else {
      const auto& item = plan[(i - 1) % plan.size()];
      b.category = item.category;
      b.fixedCost = item.fixedCost.value_or(default_fixed_cost(item.category));
      b.rationale = item.rationale.value_or(std::string(default_rationale(item.category)));
    }
    out.push_back(std::move(b));
  }
  return out;
}

CostModel make_cost_model(double currentLevel, double baseMarginalCost, double escalation, double barrierSpacing,
                          std::span<const BarrierPlanItem> plan) {
  CostModel m;
  m.currentLevel = currentLevel;
  m.baseMarginalCost = baseMarginalCost;
  m.escalation = escalation;
  m.barrierSpacing = barrierSpacing;
  m.barrierPlan = place_barriers(currentLevel, barrierSpacing, plan);
  validate(m);
  return m;
}

void validate(const CostModel& m) {
  check_level(m.currentLevel, "current level");
  if (!(m.baseMarginalCost > 0) || !std::isfinite(m.baseMarginalCost)) {
    throw ParameterError("base marginal cost must be > 0");
  }
  if (!(m.escalation > 1) || !std::isfinite(m.escalation)) throw ParameterError("escalation must be > 1");
  if (!(m.barrierSpacing > 0) || !std::isfinite(m.barrierSpacing)) throw ParameterError("barrier spacing must be > 0");
  double prev = m.currentLevel;
  for (const auto& b : m.barrierPlan) {
    if (!(b.position > prev) || b.position > kHealthMax) {
      throw ParameterError("barrier positions must be strictly increasing within (current level, 10]");
    }
    if (!(b.fixedCost >= 0) || !std::isfinite(b.fixedCost)) throw ParameterError("barrier fixed cost must be >= 0");
    prev = b.position;
  }
}

double segment_start(const CostModel& model, double health) {
  double s = model.currentLevel;
  for (const auto& b : model.barrierPlan) {
    if (b.position > health) break;
    s = b.position;
  }
  return s;
}

double marginal_cost(const CostModel& model, double health) {
  return model.baseMarginalCost * std::pow(model.escalation, health - segment_start(model, health));
}

double segment_cost(double baseMarginalCost, double escalation, double segmentStart, double a, double b) {
  const double lg = std::log(escalation);
  // gamma^(a-s) * (gamma^(b-a) - 1), with expm1 for short intervals.
  return baseMarginalCost / lg * std::pow(escalation, a - segmentStart) * std::expm1((b - a) * lg);
}

CostBreakdown cost_to_target(const CostModel& model, double from, double to) {
  validate(model);
  check_level(from, "start level");
  check_level(to, "target level");
  if (to < from) throw DomainError("cost model covers improvement only (target below start)");
  if (from < model.currentLevel) throw DomainError("start level lies below the model's current level");

  CostBreakdown out;
  double s = segment_start(model, from);
  double a = from;
  for (const auto& b : model.barrierPlan) {
    if (b.position <= from) continue;
    if (b.position > to) break;
    out.refactoringCost += segment_cost(model.baseMarginalCost, model.escalation, s, a, b.position);
    out.barrierCost += b.fixedCost;
    out.barriersCrossed.push_back(b);
    s = b.position;
    a = b.position;
  }
  out.refactoringCost += segment_cost(model.baseMarginalCost, model.escalation, s, a, to);
  out.totalCost = out.refactoringCost + out.barrierCost;
  return out;
}

}  // namespace quperman
