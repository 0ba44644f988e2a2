#include "quperman/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json_util.hpp"
#include "quperman/error.hpp"

namespace quperman {

using detail::Json;

namespace {

constexpr std::string_view kScenario = "scenario.v1";

void reject_unknown(const Json& obj, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!obj.is_object()) throw InputError(std::string(what) + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw InputError(std::string(what) + ": unknown field '" + k + "'");
    }
  }
}

std::optional<std::string> optional_string(const Json& obj, std::string_view key, std::string_view what) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError(std::string(what) + ": field '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

Json barrier_json(const InvestmentBarrier& b) {
  Json j;
  j["category"] = to_string(b.category);
  j["position"] = b.position;
  j["fixedCost"] = b.fixedCost;
  j["rationale"] = b.rationale;
  return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json evaluation_json(const TargetEvaluation& e) {
  Json j;
  j["projectId"] = e.projectId;
  j["currentLevel"] = e.currentLevel;
  j["targetLevel"] = e.targetLevel;
  j["benefit"] = {{"current", e.benefitCurrent}, {"target", e.benefitTarget}, {"delta", e.benefitDelta}};
  j["cost"] = {{"total", e.totalCost}, {"refactoring", e.refactoringCost}, {"barriers", e.barrierCost}};
  Json crossed = Json::array();
  for (const auto& b : e.barriersCrossed) crossed.push_back(barrier_json(b));
  j["barriersCrossed"] = crossed;
  j["escalationZone"] = {{"from", e.escalationZone.from},
                         {"to", e.escalationZone.to},
                         {"endsAtBarrier", e.escalationZone.endsAtBarrier}};
  j["targetPercentile"] = optional_json(e.targetPercentile);
  j["leadersGapNote"] = e.leadersGapNote ? Json(to_string(*e.leadersGapNote)) : Json(nullptr);
  return j;
}

CostModel parse_cost(const Json* cost, double currentLevel) {
  constexpr std::string_view what = "scenario cost";
  CostModel defaults;
  if (cost == nullptr) return make_cost_model(currentLevel);
  reject_unknown(*cost, {"baseMarginalCost", "escalation", "barrierSpacing", "barrierPlan", "barriers"}, what);
  const double c0 = detail::optional_number(*cost, "baseMarginalCost", what).value_or(defaults.baseMarginalCost);
  const double gamma = detail::optional_number(*cost, "escalation", what).value_or(defaults.escalation);
  const double spacing = detail::optional_number(*cost, "barrierSpacing", what).value_or(defaults.barrierSpacing);
  const bool hasPlan = cost->contains("barrierPlan");
  const bool hasExplicit = cost->contains("barriers");
  if (hasPlan && hasExplicit) throw InputError("scenario cost: give either 'barrierPlan' or 'barriers', not both");

  if (hasExplicit) {
    CostModel m;
    m.currentLevel = currentLevel;
    m.baseMarginalCost = c0;
    m.escalation = gamma;
    m.barrierSpacing = spacing;
    const auto& list = (*cost)["barriers"];
    if (!list.is_array()) throw InputError("scenario cost: 'barriers' must be a list");
    for (const auto& x : list) {
      reject_unknown(x, {"category", "position", "fixedCost", "rationale"}, "scenario barrier");
      InvestmentBarrier b;
      b.category = parse_barrier_category(detail::require_string(x, "category", "scenario barrier"));
      b.position = detail::require_number(x, "position", "scenario barrier");
      b.fixedCost = detail::optional_number(x, "fixedCost", "scenario barrier").value_or(default_fixed_cost(b.category));
      b.rationale = optional_string(x, "rationale", "scenario barrier").value_or(std::string(default_rationale(b.category)));
      m.barrierPlan.push_back(std::move(b));
    }
    validate(m);
    return m;
  }

  std::vector<BarrierPlanItem> plan;
  if (hasPlan) {
    const auto& list = (*cost)["barrierPlan"];
    if (!list.is_array()) throw InputError("scenario cost: 'barrierPlan' must be a list");
    for (const auto& x : list) {
      BarrierPlanItem item;
      if (x.is_string()) {
        item.category = parse_barrier_category(x.get<std::string>());
      } else {
        reject_unknown(x, {"category", "fixedCost", "rationale"}, "scenario barrier plan item");
        item.category = parse_barrier_category(detail::require_string(x, "category", "scenario barrier plan item"));
        item.fixedCost = detail::optional_number(x, "fixedCost", "scenario barrier plan item");
        item.rationale = optional_string(x, "rationale", "scenario barrier plan item");
      }
      plan.push_back(std::move(item));
    }
  }
  return make_cost_model(currentLevel, c0, gamma, spacing, plan);
}

std::optional<ScenarioBenchmark> parse_benchmark(const Json* bench, const BenchmarkStore* store) {
  constexpr std::string_view what = "scenario benchmark";
  if (bench == nullptr || bench->is_null()) {
    if (store == nullptr || store->empty()) return std::nullopt;
    ScenarioBenchmark sb;
    sb.scores = store->scores({});
    sb.distribution = distribution_of(sb.scores);
    return sb;
  }
  reject_unknown(*bench, {"filter", "scores", "n", "p10", "p50", "p90"}, what);
  ScenarioBenchmark sb;
  if (bench->contains("filter")) {
    if (store == nullptr) throw InputError("scenario benchmark filter needs a benchmark store");
    TagFilter filter;
    const auto& f = (*bench)["filter"];
    if (!f.is_object()) throw InputError("scenario benchmark: 'filter' must be an object");
    for (const auto& [k, v] : f.items()) {
      if (!v.is_string()) throw InputError("scenario benchmark: filter values must be strings");
      filter[k] = v.get<std::string>();
    }
    validate_tags(filter);
    sb.scores = store->scores(filter);
    sb.distribution = distribution_of(sb.scores, filter);
    return sb;
  }
  if (bench->contains("scores")) {
    const auto& s = (*bench)["scores"];
    if (!s.is_array()) throw InputError("scenario benchmark: 'scores' must be a list of numbers");
    for (const auto& x : s) {
      if (!x.is_number()) throw InputError("scenario benchmark: 'scores' must be a list of numbers");
      sb.scores.push_back(x.get<double>());
    }
    std::sort(sb.scores.begin(), sb.scores.end());
    sb.distribution = distribution_of(sb.scores);
    return sb;
  }
  sb.distribution.p10 = detail::require_number(*bench, "p10", what);
  sb.distribution.p50 = detail::require_number(*bench, "p50", what);
  sb.distribution.p90 = detail::require_number(*bench, "p90", what);
  const auto n = bench->find("n");
  sb.distribution.n = n == bench->end() ? 1 : static_cast<std::size_t>(detail::require_integer(*bench, "n", what));
  if (!(sb.distribution.p10 <= sb.distribution.p50 && sb.distribution.p50 <= sb.distribution.p90) ||
      sb.distribution.n < 1) {
    throw InputError("scenario benchmark: need p10 <= p50 <= p90 and n >= 1");
  }
  return sb;
}

}  // namespace

std::string_view to_string(LeadersGap gap) {
  switch (gap) {
    case LeadersGap::BelowLaggards:
      return "belowLaggards";
    case LeadersGap::Between:
      return "between";
    case LeadersGap::AboveLeaders:
      return "aboveLeaders";
  }
  return "between";
}

std::string_view to_string(CostBand band) {
  switch (band) {
    case CostBand::Green:
      return "green";
    case CostBand::Yellow:
      return "yellow";
    case CostBand::Red:
      return "red";
  }
  return "green";
}

void validate(const RoadmapScenario& s) {
  validate(s.curve);
  derive_breakpoints(s.curve);
  if (!(s.currentLevel >= kHealthMin && s.currentLevel <= kHealthMax)) {
    throw DomainError("current level lies outside [1, 10]");
  }
  if (!(s.targetLevel >= kHealthMin && s.targetLevel <= kHealthMax)) {
    throw DomainError("target level lies outside [1, 10]");
  }
  validate(s.costModel);
  if (s.costModel.currentLevel != s.currentLevel) {
    throw InputError("cost model current level differs from the scenario's");
  }
  if (s.gate.policy == GatePolicy::Floor &&
      (!s.gate.floorLevel || !(*s.gate.floorLevel >= kMinScore && *s.gate.floorLevel <= kMaxScore))) {
    throw InputError("floor gate needs a floor level in [1, 10]");
  }
}

TargetEvaluation evaluate_target(const RoadmapScenario& s) {
  validate(s);
  if (s.targetLevel < s.currentLevel) {
    throw DomainError("target below the current level is an unsupported direction (improvement model only)");
  }
  const auto cost = cost_to_target(s.costModel, s.currentLevel, s.targetLevel);

  TargetEvaluation e;
  e.projectId = s.projectId;
  e.currentLevel = s.currentLevel;
  e.targetLevel = s.targetLevel;
  e.benefitCurrent = benefit_value(s.curve, s.currentLevel);
  e.benefitTarget = benefit_value(s.curve, s.targetLevel);
  e.benefitDelta = e.benefitTarget - e.benefitCurrent;
  e.totalCost = cost.totalCost;
  e.refactoringCost = cost.refactoringCost;
  e.barrierCost = cost.barrierCost;
  e.barriersCrossed = cost.barriersCrossed;

  e.escalationZone.from = s.currentLevel;
  e.escalationZone.to = kHealthMax;
  for (const auto& b : s.costModel.barrierPlan) {
    if (b.position > s.currentLevel) {
      e.escalationZone.to = b.position;
      e.escalationZone.endsAtBarrier = true;
      break;
    }
  }

  if (s.benchmark) {
    const auto& d = s.benchmark->distribution;
    if (!s.benchmark->scores.empty()) e.targetPercentile = percentile_of(s.targetLevel, s.benchmark->scores);
    if (s.targetLevel < d.p10) {
      e.leadersGapNote = LeadersGap::BelowLaggards;
    } else if (s.targetLevel > d.p90) {
      e.leadersGapNote = LeadersGap::AboveLeaders;
    } else {
      e.leadersGapNote = LeadersGap::Between;
    }
  }
  return e;
}

RoadmapData build_roadmap(const RoadmapScenario& s, std::size_t samples) {
  if (samples < 2) throw ParameterError("a roadmap needs at least two samples per series");
  RoadmapData r;
  r.evaluation = evaluate_target(s);

  const auto last = static_cast<double>(samples - 1);
  r.benefitSeries.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double h = i + 1 == samples ? kHealthMax : kHealthMin + (kHealthMax - kHealthMin) * static_cast<double>(i) / last;
    r.benefitSeries.push_back({h, benefit_value(s.curve, h)});
  }

  const auto& model = s.costModel;
  r.costSeries.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double h =
        i + 1 == samples ? kHealthMax : model.currentLevel + (kHealthMax - model.currentLevel) * static_cast<double>(i) / last;
    const double start = segment_start(model, h);
    double end = kHealthMax;
    for (const auto& b : model.barrierPlan) {
      if (b.position > h) {
        end = b.position;
        break;
      }
    }
    // Thirds of the escalation segment: green, yellow, red.
    const double t = end > start ? (h - start) / (end - start) : 0.0;
    const CostBand band = t < 1.0 / 3.0 ? CostBand::Green : t < 2.0 / 3.0 ? CostBand::Yellow : CostBand::Red;
    r.costSeries.push_back({h, marginal_cost(model, h), band});
  }

  r.markers.current = s.currentLevel;
  r.markers.target = s.targetLevel;
  r.markers.breakpoints = derive_breakpoints(s.curve);
  r.markers.barriers = model.barrierPlan;
  r.markers.gateLevel = s.gate.policy == GatePolicy::Floor ? *s.gate.floorLevel : s.currentLevel;
  if (s.benchmark) {
    r.markers.laggards = s.benchmark->distribution.p10;
    r.markers.leaders = s.benchmark->distribution.p90;
  }
  return r;
}

RoadmapScenario parse_scenario(std::string_view text, const BenchmarkStore* store) {
  constexpr std::string_view what = "scenario";
  const auto doc = detail::parse_json(text, what);
  detail::check_schema(doc, kScenario, what);
  reject_unknown(doc, {"schema", "projectId", "currentLevel", "targetLevel", "benefit", "cost", "gate", "benchmark"},
                 what);

  RoadmapScenario s;
  s.projectId = optional_string(doc, "projectId", what).value_or("project");
  s.currentLevel = detail::require_number(doc, "currentLevel", what);
  s.targetLevel = detail::require_number(doc, "targetLevel", what);
  if (!(s.currentLevel >= kHealthMin && s.currentLevel <= kHealthMax)) {
    throw DomainError("scenario: currentLevel lies outside [1, 10]");
  }

  if (const auto it = doc.find("benefit"); it != doc.end()) {
    reject_unknown(*it, {"epsilon", "kSlope"}, "scenario benefit");
    s.curve.epsilon = detail::optional_number(*it, "epsilon", "scenario benefit").value_or(s.curve.epsilon);
    s.curve.kSlope = detail::optional_number(*it, "kSlope", "scenario benefit").value_or(s.curve.kSlope);
  }
  const auto cost = doc.find("cost");
  s.costModel = parse_cost(cost == doc.end() ? nullptr : &*cost, s.currentLevel);

  if (const auto it = doc.find("gate"); it != doc.end()) {
    reject_unknown(*it, {"policy", "floorLevel"}, "scenario gate");
    s.gate.policy = parse_gate_policy(optional_string(*it, "policy", "scenario gate").value_or("noDecline"));
    s.gate.floorLevel = detail::optional_number(*it, "floorLevel", "scenario gate");
  }
  const auto bench = doc.find("benchmark");
  s.benchmark = parse_benchmark(bench == doc.end() ? nullptr : &*bench, store);
  validate(s);
  return s;
}

std::string default_scenario_document() {
  const BenefitCurve curve;
  const CostModel cost;
  Json j;
  j["schema"] = kScenario;
  j["projectId"] = "example";
  j["currentLevel"] = 4.0;
  j["targetLevel"] = 7.0;
  j["benefit"] = {{"epsilon", curve.epsilon}, {"kSlope", curve.kSlope}};
  Json plan = Json::array();
  for (const auto c : kBarrierTaxonomy) {
    plan.push_back({{"category", to_string(c)}, {"fixedCost", default_fixed_cost(c)}});
  }
  j["cost"] = {{"baseMarginalCost", cost.baseMarginalCost},
               {"escalation", cost.escalation},
               {"barrierSpacing", cost.barrierSpacing},
               {"barrierPlan", plan}};
  j["gate"] = {{"policy", to_string(GatePolicy::NoDecline)}, {"floorLevel", nullptr}};
  return detail::dump_document(j);
}

std::string to_evaluation_document(const TargetEvaluation& evaluation) {
  Json j;
  j["schema"] = "evaluation.v1";
  const Json body = evaluation_json(evaluation);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return detail::dump_document(j);
}

std::string to_roadmap_document(const RoadmapData& r) {
  Json j;
  j["schema"] = "roadmap.v1";
  j["evaluation"] = evaluation_json(r.evaluation);
  Json markers;
  markers["current"] = r.markers.current;
  markers["target"] = r.markers.target;
  markers["costSpiralTrigger"] = r.markers.breakpoints.costSpiralTrigger;
  markers["valueCascadePoint"] = r.markers.breakpoints.valueCascadePoint;
  Json barriers = Json::array();
  for (const auto& b : r.markers.barriers) barriers.push_back(barrier_json(b));
  markers["barriers"] = barriers;
  markers["gateLevel"] = r.markers.gateLevel;
  markers["laggards"] = optional_json(r.markers.laggards);
  markers["leaders"] = optional_json(r.markers.leaders);
  j["markers"] = markers;
  Json benefit = Json::array();
  for (const auto& p : r.benefitSeries) benefit.push_back({{"health", p.health}, {"benefit", p.benefit}});
  j["benefitSeries"] = benefit;
  Json cost = Json::array();
  for (const auto& p : r.costSeries) {
    cost.push_back({{"health", p.health}, {"marginalCost", p.marginalCost}, {"band", to_string(p.band)}});
  }
  j["costSeries"] = cost;
  return detail::dump_document(j);
}

}  // namespace quperman
