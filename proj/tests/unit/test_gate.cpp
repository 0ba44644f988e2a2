#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "quperman/error.hpp"
#include "quperman/gate.hpp"
#include "support.hpp"

using namespace quperman;

namespace {

ProjectHealth project(double score, std::vector<std::pair<std::string, double>> files) {
  ProjectHealth p;
  p.score = score;
  for (auto& [path, s] : files) {
    FileHealth f;
    f.path = path;
    f.score = s;
    p.files.push_back(f);
  }
  return p;
}

}  // namespace

TEST_CASE("no decline passes on equal or better scores") {
  const auto before = project(8, {{"a", 8}, {"b", 8}});
  const auto after = project(8.5, {{"a", 9}, {"b", 8}, {"c", 2}});
  const auto r = gate_check(before, after, GatePolicy::NoDecline);
  CHECK(r.pass);
  CHECK(r.violations.empty());
  CHECK_FALSE(r.floorLevel.has_value());
}

TEST_CASE("no decline reports each declining file and the project") {
  const auto before = project(8, {{"a", 8}, {"b", 8}});
  const auto after = project(7.5, {{"a", 7}, {"b", 8}});
  const auto r = gate_check(before, after, GatePolicy::NoDecline);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].path == "a");
  CHECK(r.violations[0].before == 8);
  CHECK(r.violations[0].after == 7);
  CHECK(r.violations[1].path == kProjectPath);
}

TEST_CASE("declines inside the tolerance are ignored") {
  const auto r = gate_check(project(8, {{"a", 8}}), project(8 - 1e-12, {{"a", 8 - 1e-12}}), GatePolicy::NoDecline);
  CHECK(r.pass);
}

TEST_CASE("identical reports always pass") {
  std::mt19937_64 rng(qtest::kSeed);
  std::uniform_real_distribution<double> score(1.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::string, double>> files;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 10); ++i) files.emplace_back("f" + std::to_string(i), score(rng));
    const auto p = project(score(rng), files);
    CHECK(gate_check(p, p, GatePolicy::NoDecline).pass);
  }
}

TEST_CASE("floor policy") {
  const auto before = project(6, {{"a", 6}});
  const auto after = project(6.5, {{"a", 7}, {"new", 4}});
  auto r = gate_check(before, after, GatePolicy::Floor, 5.0);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].path == "new");
  CHECK_FALSE(r.violations[0].before.has_value());
  CHECK(r.floorLevel == 5.0);

  r = gate_check(before, after, GatePolicy::Floor, 7.0);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[1].path == kProjectPath);

  CHECK(gate_check(before, after, GatePolicy::Floor, 4.0).pass);
  // The floor needs no baseline.
  CHECK(gate_check(ProjectHealth{}, after, GatePolicy::Floor, 4.0).pass);
}

TEST_CASE("invalid gate inputs") {
  const auto p = project(5, {{"a", 5}});
  CHECK_THROWS_AS(gate_check(p, ProjectHealth{}, GatePolicy::NoDecline), InputError);
  CHECK_THROWS_AS(gate_check(ProjectHealth{}, p, GatePolicy::NoDecline), InputError);
  CHECK_THROWS_AS(gate_check(p, project(5, {{"b", 5}}), GatePolicy::NoDecline), InputError);
  CHECK_THROWS_AS(gate_check(p, p, GatePolicy::Floor), InputError);
  CHECK_THROWS_AS(gate_check(p, p, GatePolicy::Floor, 0.5), InputError);
  CHECK_THROWS_AS(gate_check(p, p, GatePolicy::Floor, 11.0), InputError);
  CHECK_THROWS_AS(parse_gate_policy("strict"), InputError);
  CHECK(parse_gate_policy("floor") == GatePolicy::Floor);
  CHECK(to_string(GatePolicy::NoDecline) == "noDecline");
}

TEST_CASE("gate document") {
  const auto r = gate_check(project(8, {{"a", 8}}), project(7, {{"a", 7}}), GatePolicy::NoDecline);
  const auto doc = to_gate_document(r);
  CHECK(doc.find("\"schema\": \"gate.v1\"") != std::string::npos);
  CHECK(doc.find("\"pass\": false") != std::string::npos);
  CHECK(doc.find("<project>") != std::string::npos);
}
