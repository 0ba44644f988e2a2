#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "quperman/analysis.hpp"
#include "quperman/error.hpp"
#include "quperman/health.hpp"
#include "support.hpp"

using namespace quperman;

namespace {

FunctionMetrics fn(int loc, int cc, int nest, int arity, int startLine = 1) {
  FunctionMetrics f;
  f.name = "f" + std::to_string(startLine);
  f.startLine = startLine;
  f.endLine = startLine + std::max(loc, 1) - 1;
  f.loc = loc;
  f.cyclomatic = cc;
  f.maxNesting = nest;
  f.arity = arity;
  return f;
}

FileMetrics file_with(std::vector<FunctionMetrics> fns, int totalLoc = 100, double density = 0.1) {
  FileMetrics fm;
  fm.unit.path = "x.c";
  fm.unit.lineCount = static_cast<std::size_t>(std::max(totalLoc, 1));
  fm.totalLoc = totalLoc;
  fm.commentDensity = density;
  fm.functions = std::move(fns);
  return fm;
}

std::multiset<std::pair<SmellKind, Severity>> kinds(const std::vector<SmellFinding>& fs) {
  std::multiset<std::pair<SmellKind, Severity>> out;
  for (const auto& f : fs) out.emplace(f.kind, f.severity);
  return out;
}

SmellFinding make_finding(SmellKind k, Severity s, int line = 1) {
  SmellFinding f;
  f.kind = k;
  f.severity = s;
  f.startLine = line;
  f.endLine = line;
  f.path = "x.c";
  return f;
}

bool evidence_violated(const Evidence& e) { return e.below ? e.observed < e.threshold : e.observed > e.threshold; }

}  // namespace

TEST_CASE("metrics below every threshold yield no findings") {
  CHECK(detect_smells(file_with({fn(70, 10, 4, 5)})).empty());
}

TEST_CASE("each threshold is strict") {
  CHECK(kinds(detect_smells(file_with({fn(71, 1, 0, 0)}))) ==
        std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::LongFunction, Severity::Minor}});
  CHECK(kinds(detect_smells(file_with({fn(10, 11, 0, 0)}))) ==
        std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::ComplexFunction, Severity::Minor}});
  CHECK(kinds(detect_smells(file_with({fn(10, 1, 5, 0)}))) ==
        std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::DeepNesting, Severity::Minor}});
  CHECK(kinds(detect_smells(file_with({fn(10, 1, 0, 6)}))) ==
        std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::ManyArguments, Severity::Minor}});
}

TEST_CASE("severity scales with the observed to threshold ratio") {
  CHECK(severity_for_ratio(1.5) == Severity::Minor);
  CHECK(severity_for_ratio(2.0) == Severity::Major);
  CHECK(severity_for_ratio(3.99) == Severity::Major);
  CHECK(severity_for_ratio(4.0) == Severity::Critical);
  CHECK(detect_smells(file_with({fn(140, 1, 0, 0)}))[0].severity == Severity::Major);
  CHECK(detect_smells(file_with({fn(200, 1, 0, 0)}))[0].severity == Severity::Major);
  CHECK(detect_smells(file_with({fn(280, 1, 0, 0)}))[0].severity == Severity::Critical);
}

TEST_CASE("brain method joins its component smells and is always critical") {
  // loc 300 is 4.3x the loc threshold, so LongFunction is critical under the ratio rule.
  const auto found = detect_smells(file_with({fn(300, 15, 5, 2)}, 400));
  CHECK(kinds(found) == std::multiset<std::pair<SmellKind, Severity>>{
                            {SmellKind::LongFunction, Severity::Critical},
                            {SmellKind::ComplexFunction, Severity::Minor},
                            {SmellKind::DeepNesting, Severity::Minor},
                            {SmellKind::BrainMethod, Severity::Critical},
                        });
  // Just over every brain threshold while under the standalone nesting one.
  const auto brain = detect_smells(file_with({fn(71, 11, 4, 0)}));
  CHECK(kinds(brain) == std::multiset<std::pair<SmellKind, Severity>>{
                            {SmellKind::LongFunction, Severity::Minor},
                            {SmellKind::ComplexFunction, Severity::Minor},
                            {SmellKind::BrainMethod, Severity::Critical},
                        });
}

TEST_CASE("file-level smells") {
  SUBCASE("god module") {
    std::vector<FunctionMetrics> fns;
    for (int i = 0; i < 35; ++i) fns.push_back(fn(10, 1, 0, 0, 1 + i * 30));
    const auto found = detect_smells(file_with(fns, 1200));
    CHECK(kinds(found) == std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::GodModule, Severity::Minor},
                                                                         {SmellKind::LargeFile, Severity::Major}});
    fns.resize(30);
    CHECK(kinds(detect_smells(file_with(fns, 1200))) ==
          std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::LargeFile, Severity::Major}});
  }
  SUBCASE("duplication") {
    auto fm = file_with({});
    fm.duplicationRatio = 0.15;
    CHECK(detect_smells(fm).empty());
    fm.duplicationRatio = 0.31;
    CHECK(kinds(detect_smells(fm)) ==
          std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::Duplication, Severity::Major}});
  }
  SUBCASE("large file") {
    CHECK(detect_smells(file_with({}, 600)).empty());
    CHECK(kinds(detect_smells(file_with({}, 2400))) ==
          std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::LargeFile, Severity::Critical}});
  }
  SUBCASE("low comment is minor only and needs enough code") {
    CHECK(detect_smells(file_with({}, 200, 0.0)).empty());
    CHECK(detect_smells(file_with({}, 201, 0.02)).empty());
    CHECK(kinds(detect_smells(file_with({}, 201, 0.0))) ==
          std::multiset<std::pair<SmellKind, Severity>>{{SmellKind::LowComment, Severity::Minor}});
  }
}

TEST_CASE("findings are ordered by line then kind") {
  const auto found = detect_smells(file_with({fn(10, 1, 0, 9, 50), fn(75, 12, 0, 0, 3)}, 700));
  REQUIRE(found.size() == 4);
  CHECK(found[0].kind == SmellKind::LargeFile);
  CHECK(found[0].function.empty());
  CHECK(found[1].kind == SmellKind::LongFunction);
  CHECK(found[2].kind == SmellKind::ComplexFunction);
  CHECK(found[3].kind == SmellKind::ManyArguments);
  CHECK(found[3].startLine == 50);
  CHECK(found[3].function == "f50");
}

TEST_CASE("score examples") {
  CHECK(score_file("a", {}).score == 10.0);
  const auto mixed = score_file("a", {make_finding(SmellKind::LongFunction, Severity::Minor),
                                      make_finding(SmellKind::ComplexFunction, Severity::Major)});
  CHECK(mixed.score == 8.5);
  std::vector<SmellFinding> many(6, make_finding(SmellKind::BrainMethod, Severity::Critical));
  const auto floor = score_file("a", many);
  CHECK(floor.score == 1.0);
  CHECK(floor.penaltyBreakdown.at(SmellKind::BrainMethod) == 12.0);
}

TEST_CASE("aggregate examples") {
  auto metrics = [](int loc, const char* path) {
    FileMetrics fm;
    fm.unit.path = path;
    fm.totalLoc = loc;
    return fm;
  };
  auto health = [](double score, const char* path) {
    FileHealth h;
    h.path = path;
    h.score = score;
    return h;
  };
  CHECK(aggregate_project({health(7.3, "a")}, {metrics(10, "a")}, Weighting::ByLoc).score == doctest::Approx(7.3));
  CHECK(aggregate_project({health(10, "a"), health(2, "b")}, {metrics(100, "a"), metrics(100, "b")}, Weighting::ByLoc)
            .score == doctest::Approx(6.0));
  CHECK(aggregate_project({health(10, "a"), health(2, "b")}, {metrics(300, "a"), metrics(100, "b")}, Weighting::ByLoc)
            .score == doctest::Approx(8.0));
  // Empty files still carry weight one.
  CHECK(aggregate_project({health(10, "a"), health(4, "b")}, {metrics(0, "a"), metrics(0, "b")}, Weighting::ByLoc)
            .score == doctest::Approx(7.0));

  ChangeCounts counts{{"a", 0}, {"b", 3}};
  // weights 100*1 and 100*(1+log2 4) = 300
  CHECK(aggregate_project({health(10, "a"), health(2, "b")}, {metrics(100, "a"), metrics(100, "b")},
                          Weighting::ByChangeFrequency, &counts)
            .score == doctest::Approx(4.0));

  CHECK_THROWS_AS(aggregate_project({}, {}, Weighting::ByLoc), InputError);
  CHECK_THROWS_AS(aggregate_project({health(1, "a")}, {metrics(1, "b")}, Weighting::ByLoc), InputError);
  CHECK_THROWS_AS(aggregate_project({health(1, "a")}, {metrics(1, "a")}, Weighting::ByChangeFrequency), InputError);
  ChangeCounts partial{{"a", 1}};
  try {
    aggregate_project({health(1, "a"), health(1, "zzz")}, {metrics(1, "a"), metrics(1, "zzz")},
                      Weighting::ByChangeFrequency, &partial);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("zzz") != std::string::npos);
  }
}

TEST_CASE("weights digest changes with the weights") {
  FileMetrics a;
  a.unit.path = "a";
  a.totalLoc = 10;
  FileHealth h;
  h.path = "a";
  const auto one = aggregate_project({h}, {a}, Weighting::ByLoc);
  a.totalLoc = 11;
  const auto two = aggregate_project({h}, {a}, Weighting::ByLoc);
  CHECK(one.weightsDigest.size() == 64);
  CHECK(one.weightsDigest != two.weightsDigest);
}

TEST_CASE("maintainability index") {
  SUBCASE("empty file") {
    const auto r = maintainability_index(file_with({}, 0, 0.0));
    CHECK(r.mi == doctest::Approx(170.77).epsilon(1e-12));
  }
  SUBCASE("reference file") {
    // Means: V = 100, CC = 10 from two functions.
    auto a = fn(10, 8, 0, 0);
    auto b = fn(10, 12, 0, 0, 20);
    a.halsteadVolume = 50;
    b.halsteadVolume = 150;
    const auto r = maintainability_index(file_with({a, b}, 200, 0.10));
    // Reference value from an independent arbitrary-precision evaluation.
    CHECK(std::abs(r.mi - 82.44716581372869952598518224719524688209) < 1e-9);
    CHECK(std::abs(r.normalizedMi - 48.21471685013374241285683172350599232871) < 1e-9);
    CHECK(r.mi == doctest::Approx(171 - r.volumeTerm - r.cyclomaticTerm - r.locTerm + r.commentTerm));
  }
  SUBCASE("normalization is clamped") {
    CHECK(maintainability_index(file_with({}, 1, 0.0)).normalizedMi == doctest::Approx(100 * 170.77 / 171));
    auto heavy = fn(10, 500, 0, 0);
    heavy.halsteadVolume = 1e30;
    CHECK(maintainability_index(file_with({heavy}, 100000, 0.0)).normalizedMi == 0.0);
    CHECK(maintainability_index(file_with({}, 1, 0.3)).normalizedMi == 100.0);
  }
}

TEST_CASE("change counts parse uniq -c output") {
  const auto c = parse_change_counts("  12 src/a.c\n# comment\n\n3 ./src/b.c\n\t4\tsrc/a.c\r\n");
  CHECK(c.size() == 2);
  CHECK(c.at("src/a.c") == 16);
  CHECK(c.at("src/b.c") == 3);
  CHECK_THROWS_AS(parse_change_counts("x src/a.c\n"), InputError);
  CHECK_THROWS_AS(parse_change_counts("12\n"), InputError);
  CHECK_THROWS_AS(parse_change_counts("-1 a\n"), InputError);
  CHECK(parse_change_counts("").empty());
}

TEST_CASE("random metrics: scores bounded, evidence violated, detection pure") {
  std::mt19937_64 rng(qtest::kSeed);
  std::uniform_int_distribution<int> loc(0, 400);
  std::uniform_int_distribution<int> cc(1, 60);
  std::uniform_int_distribution<int> nest(0, 12);
  std::uniform_int_distribution<int> arity(0, 12);
  std::uniform_real_distribution<double> ratio(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<FunctionMetrics> fns;
    const int count = static_cast<int>(rng() % 40);
    for (int i = 0; i < count; ++i) fns.push_back(fn(loc(rng), cc(rng), nest(rng), arity(rng), 1 + i * 10));
    auto fm = file_with(fns, static_cast<int>(rng() % 3000), ratio(rng) * 0.05);
    fm.duplicationRatio = ratio(rng);
    const auto found = detect_smells(fm);
    CHECK(found == detect_smells(fm));
    for (const auto& f : found) {
      for (const auto& e : f.evidence) CHECK(evidence_violated(e));
    }
    const auto scored = score_file("x.c", found);
    CHECK(scored.score >= 1.0);
    CHECK(scored.score <= 10.0);
    // Dropping any one finding never lowers the score.
    for (std::size_t i = 0; i < found.size(); ++i) {
      auto fewer = found;
      fewer.erase(fewer.begin() + static_cast<long>(i));
      CHECK(score_file("x.c", fewer).score >= scored.score);
    }
  }
}

TEST_CASE("fixture mutation: easing a metric never lowers the score") {
  const auto result = analyze_project(qtest::corpus_dir(), AnalysisConfig{});
  for (const auto& fm : result.files) {
    const double base = score_file(fm.unit.path, detect_smells(fm)).score;
    for (std::size_t i = 0; i < fm.functions.size(); ++i) {
      auto eased = fm;
      auto& f = eased.functions[i];
      f.loc = std::min(f.loc, 10);
      f.cyclomatic = 1;
      f.maxNesting = 0;
      f.arity = 0;
      CHECK(score_file(eased.unit.path, detect_smells(eased)).score >= base);
    }
  }
}

TEST_CASE("fixture corpus scores") {
  const auto result = analyze_project(qtest::corpus_dir(), AnalysisConfig{});
  const auto report = assess_health(result.files, ThresholdConfig{}, Weighting::ByLoc, nullptr, result.configDigest);
  double lo = 10;
  double hi = 1;
  for (const auto& f : report.project.files) {
    lo = std::min(lo, f.score);
    hi = std::max(hi, f.score);
    if (f.path == "c/clean.c") CHECK(f.score == 10.0);
    if (f.path == "c/brain.c") {
      CHECK(f.score == 6.5);
      CHECK(kinds(f.findings) == std::multiset<std::pair<SmellKind, Severity>>{
                                     {SmellKind::LongFunction, Severity::Minor},
                                     {SmellKind::ComplexFunction, Severity::Minor},
                                     {SmellKind::ManyArguments, Severity::Minor},
                                     {SmellKind::BrainMethod, Severity::Critical},
                                 });
    }
  }
  CHECK(report.project.score >= lo);
  CHECK(report.project.score <= hi);
}

TEST_CASE("health document round-trips") {
  const auto result = analyze_project(qtest::corpus_dir(), AnalysisConfig{});
  const auto report = assess_health(result.files, ThresholdConfig{}, Weighting::ByLoc, nullptr, "digest");
  const auto doc = to_health_document(report);
  const auto back = parse_health_document(doc);
  CHECK(back.project.score == report.project.score);
  CHECK(back.project.weightsDigest == report.project.weightsDigest);
  REQUIRE(back.project.files.size() == report.project.files.size());
  for (std::size_t i = 0; i < back.project.files.size(); ++i) CHECK(back.project.files[i] == report.project.files[i]);
  CHECK(to_health_document(back) == doc);
  CHECK_THROWS_AS(parse_health_document(R"({"schema":"health.v2"})"), VersionError);
}

TEST_CASE("enum names round-trip") {
  for (auto k : {SmellKind::LongFunction, SmellKind::ComplexFunction, SmellKind::DeepNesting, SmellKind::ManyArguments,
                 SmellKind::BrainMethod, SmellKind::GodModule, SmellKind::Duplication, SmellKind::LargeFile,
                 SmellKind::LowComment}) {
    CHECK(parse_smell_kind(to_string(k)) == k);
  }
  for (auto s : {Severity::Minor, Severity::Major, Severity::Critical}) CHECK(parse_severity(to_string(s)) == s);
  CHECK(to_string(Severity::Major) == "major");
  CHECK_THROWS_AS(parse_smell_kind("Smelly"), InputError);
  CHECK_THROWS_AS(parse_weighting("byAge"), ConfigError);
}
