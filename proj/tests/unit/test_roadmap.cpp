#include <doctest.h>

#include <string>

#include "quperman/benchmark.hpp"
#include "quperman/error.hpp"
#include "quperman/roadmap.hpp"
#include "support.hpp"

using namespace quperman;

namespace {

RoadmapScenario scenario(double current, double target) {
  const std::string doc = R"({"schema":"scenario.v1","currentLevel":)" + std::to_string(current) +
                          R"(,"targetLevel":)" + std::to_string(target) + "}";
  return parse_scenario(doc);
}

BenchmarkStore sample_store() { return load_store(qtest::data_dir() / "sample-bench.v1.jsonl"); }

}  // namespace

TEST_CASE("staying put costs nothing and gains nothing") {
  const auto e = evaluate_target(scenario(6, 6));
  CHECK(e.benefitDelta == 0.0);
  CHECK(e.totalCost == 0.0);
  CHECK(e.barriersCrossed.empty());
  CHECK(e.escalationZone.from == 6.0);
  CHECK(e.escalationZone.to == 7.5);
  CHECK(e.escalationZone.endsAtBarrier);
  CHECK_FALSE(e.targetPercentile.has_value());
  CHECK_FALSE(e.leadersGapNote.has_value());
}

TEST_CASE("golden scenario numbers") {
  const auto store = sample_store();
  const auto s = parse_scenario(qtest::read_file(qtest::data_dir() / "scenario.golden.json"), &store);
  const auto e = evaluate_target(s);
  CHECK(e.projectId == "golden");
  CHECK(std::abs(e.refactoringCost - 52.75725490996389039266) < 1e-9);
  CHECK(e.barrierCost == 150.0);
  REQUIRE(e.barriersCrossed.size() == 2);
  CHECK(e.barriersCrossed[0].category == BarrierCategory::TestAdequacy);
  CHECK(e.barriersCrossed[1].category == BarrierCategory::ArchitecturalChange);
  CHECK(e.targetPercentile == 60.0);
  CHECK(e.leadersGapNote == LeadersGap::Between);
}

TEST_CASE("golden documents are reproduced byte for byte") {
  const auto store = sample_store();
  const auto s = parse_scenario(qtest::read_file(qtest::data_dir() / "scenario.golden.json"), &store);
  const auto roadmap = build_roadmap(s);
  CHECK(to_evaluation_document(roadmap.evaluation) == qtest::read_file(qtest::golden_dir() / "evaluation.v1.json"));
  CHECK(to_roadmap_document(roadmap) == qtest::read_file(qtest::golden_dir() / "roadmap.v1.json"));
}

TEST_CASE("leaders gap classification") {
  const auto store = sample_store();
  auto with_target = [&](double t) {
    const std::string doc =
        R"({"schema":"scenario.v1","currentLevel":1.5,"targetLevel":)" + std::to_string(t) + "}";
    return evaluate_target(parse_scenario(doc, &store));
  };
  CHECK(with_target(2.0).leadersGapNote == LeadersGap::BelowLaggards);
  CHECK(with_target(2.1).leadersGapNote == LeadersGap::Between);
  CHECK(with_target(8.6).leadersGapNote == LeadersGap::Between);
  CHECK(with_target(9.0).leadersGapNote == LeadersGap::AboveLeaders);
  CHECK(with_target(9.0).targetPercentile == 90.0);
  CHECK(with_target(10.0).targetPercentile == 100.0);
}

TEST_CASE("benchmark sections") {
  const auto store = sample_store();
  SUBCASE("inline summary has no percentile") {
    const auto s = parse_scenario(
        R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":9.5,
            "benchmark":{"p10":3,"p50":5,"p90":9,"n":40}})");
    const auto e = evaluate_target(s);
    CHECK_FALSE(e.targetPercentile.has_value());
    CHECK(e.leadersGapNote == LeadersGap::AboveLeaders);
  }
  SUBCASE("inline scores") {
    const auto s = parse_scenario(
        R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"benchmark":{"scores":[5,6,7,8,9]}})");
    CHECK(evaluate_target(s).targetPercentile == 60.0);
  }
  SUBCASE("filter against the store") {
    const auto s = parse_scenario(
        R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"benchmark":{"filter":{"language":"java"}}})",
        &store);
    REQUIRE(s.benchmark.has_value());
    CHECK(s.benchmark->distribution.n == store.scores({{"language", "java"}}).size());
    CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,
                                       "benchmark":{"filter":{"language":"java"}}})"),
                    InputError);
    CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,
                                       "benchmark":{"filter":{"language":"cobol"}}})",
                                   &store),
                    EmptyDistributionError);
  }
  SUBCASE("the whole store is used by default") {
    const auto s = parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7})", &store);
    REQUIRE(s.benchmark.has_value());
    CHECK(s.benchmark->distribution.n == 10);
    const BenchmarkStore empty;
    CHECK_FALSE(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7})", &empty)
                    .benchmark.has_value());
  }
}

TEST_CASE("cost sections") {
  SUBCASE("explicit barriers") {
    const auto s = parse_scenario(R"({"schema":"scenario.v1","currentLevel":3,"targetLevel":9,
      "cost":{"barriers":[{"category":"RegulatoryAspects","position":6,"fixedCost":20,"rationale":"audit"}]}})");
    REQUIRE(s.costModel.barrierPlan.size() == 1);
    const auto e = evaluate_target(s);
    CHECK(e.barrierCost == 20);
    CHECK(e.barriersCrossed[0].rationale == "audit");
  }
  SUBCASE("plan by name cycles") {
    const auto s = parse_scenario(R"({"schema":"scenario.v1","currentLevel":1,"targetLevel":9,
      "cost":{"barrierSpacing":2,"barrierPlan":["DomainKnowledge","MajorCodeSmells"]}})");
    REQUIRE(s.costModel.barrierPlan.size() == 4);
    CHECK(s.costModel.barrierPlan[2].category == BarrierCategory::DomainKnowledge);
    CHECK(s.costModel.barrierPlan[3].category == BarrierCategory::MajorCodeSmells);
  }
}

TEST_CASE("invalid scenarios") {
  for (const char* bad : {
           R"({"currentLevel":4,"targetLevel":7})",
           R"({"schema":"scenario.v1","targetLevel":7})",
           R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"extra":1})",
           R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"benefit":{"kSlope":"x"}})",
           R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"cost":{"barrierPlan":["Nope"]}})",
           R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"gate":{"policy":"floor"}})",
       }) {
    INFO(bad);
    CHECK_THROWS_AS(parse_scenario(bad), InputError);
  }
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v2","currentLevel":4,"targetLevel":7})"), VersionError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":0,"targetLevel":7})"), DomainError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":11})"), DomainError);
  CHECK_THROWS_AS(evaluate_target(parse_scenario(R"({"schema":"scenario.v1","currentLevel":7,"targetLevel":4})")),
                  DomainError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,
                                     "benefit":{"kSlope":1}})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,
                                     "benefit":{"kSlope":9}})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_scenario(R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,
                                     "cost":{"escalation":1}})"),
                  ParameterError);
}

TEST_CASE("roadmap series and markers") {
  const auto s = scenario(4, 7);
  const auto r = build_roadmap(s);
  REQUIRE(r.benefitSeries.size() == kRoadmapSamples);
  REQUIRE(r.costSeries.size() == kRoadmapSamples);
  CHECK(r.benefitSeries.front().health == 1.0);
  CHECK(r.benefitSeries.back().health == 10.0);
  CHECK(r.benefitSeries.front().benefit == 0.0);
  CHECK(r.benefitSeries.back().benefit == 1.0);
  CHECK(r.costSeries.front().health == 4.0);
  CHECK(r.costSeries.back().health == 10.0);
  CHECK(r.costSeries.front().band == CostBand::Green);
  CHECK(r.markers.barriers == place_barriers(4.0, 1.5));
  CHECK(r.markers.gateLevel == 4.0);
  CHECK_FALSE(r.markers.leaders.has_value());

  // Within each segment the band never goes back from red to green except at a barrier.
  for (std::size_t i = 1; i < r.costSeries.size(); ++i) {
    const auto& prev = r.costSeries[i - 1];
    const auto& cur = r.costSeries[i];
    if (cur.band < prev.band) CHECK(cur.marginalCost < prev.marginalCost);
    if (cur.marginalCost < prev.marginalCost) CHECK(cur.band == CostBand::Green);
  }

  const auto small = build_roadmap(s, 2);
  CHECK(small.benefitSeries.size() == 2);
  CHECK_THROWS_AS(build_roadmap(s, 1), ParameterError);

  const auto floor = build_roadmap(parse_scenario(
      R"({"schema":"scenario.v1","currentLevel":4,"targetLevel":7,"gate":{"policy":"floor","floorLevel":5}})"));
  CHECK(floor.markers.gateLevel == 5.0);
}

TEST_CASE("default scenario parses and evaluates") {
  const auto s = parse_scenario(default_scenario_document());
  CHECK(s.projectId == "example");
  CHECK(s.costModel.barrierPlan == place_barriers(4.0, 1.5));
  CHECK(evaluate_target(s).totalCost > 0);
}
