#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "quperman/analysis.hpp"
#include "quperman/duplication.hpp"
#include "quperman/error.hpp"
#include "quperman/frontend.hpp"
#include "support.hpp"

using namespace quperman;

TEST_CASE("windows shorter than the minimum are rejected") {
  CHECK_THROWS_AS(duplication_ratio({{"a"}}, 7), ParameterError);
  CHECK_NOTHROW(duplication_ratio({{"a"}}, 8));
}

TEST_CASE("hand-sized examples") {
  const std::vector<std::string> a = {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10"};
  std::vector<std::string> b = {"x", "1", "2", "3", "4", "5", "6", "7", "8", "y"};
  const auto r = duplication_ratio({a, b}, 8);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.8));
  CHECK(r[1] == doctest::Approx(0.8));
  CHECK(duplication_ratio({a}, 8)[0] == 0.0);
  CHECK(duplication_ratio({{"a", "b"}}, 8)[0] == 0.0);
  CHECK(duplication_ratio({}, 8).empty());
}

TEST_CASE("matches the brute-force window oracle on random corpora") {
  std::mt19937_64 rng(qtest::kSeed);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t files = 1 + rng() % 5;
    const std::size_t alphabet = 2 + rng() % 4;  // tiny alphabets force repeats
    const std::size_t window = 8 + rng() % 4;
    std::vector<std::vector<std::string>> streams(files);
    for (auto& s : streams) {
      const std::size_t len = rng() % 60;
      for (std::size_t i = 0; i < len; ++i) s.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
    }
    // Occasionally splice a long shared run between two files.
    if (files >= 2 && trial % 3 == 0 && streams[0].size() > 12) {
      streams[1].insert(streams[1].end(), streams[0].begin(), streams[0].begin() + 12);
    }
    INFO("trial " << trial);
    CHECK(duplication_ratio(streams, window) == qtest::oracle::duplication(streams, window));
  }
}

TEST_CASE("matches the oracle on fixture subsets") {
  FrontendRegistry reg;
  std::vector<std::vector<std::string>> all;
  for (const auto* rel : {"c/clean.c", "c/branches.c", "c/brain.c", "cpp/shapes.cpp", "java/Account.java",
                          "js/util.js", "python/stats.py"}) {
    const auto& f = reg.select(rel);
    all.push_back(normalized_tokens(f.tokenize(qtest::read_file(qtest::corpus_dir() / rel))));
  }
  for (std::size_t start = 0; start + 5 <= all.size(); ++start) {
    const std::vector<std::vector<std::string>> subset(all.begin() + static_cast<long>(start),
                                                       all.begin() + static_cast<long>(start + 5));
    for (std::size_t w : {8u, 12u, 25u}) {
      CHECK(duplication_ratio(subset, w) == qtest::oracle::duplication(subset, w));
    }
  }
}

TEST_CASE("renamed clones are detected") {
  const auto f = make_c_family_frontend();
  const auto a = normalized_tokens(f->tokenize("int f(int a, int b) { int c = a * b + a - b; return c * 2; }"));
  const auto b = normalized_tokens(f->tokenize("int g(int x, int y) { int z = x * y + x - y; return z * 2; }"));
  const auto r = duplication_ratio({a, b}, 8);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == 1.0);
}

TEST_CASE("analysis stores the corpus duplication per file") {
  qtest::TempDir dir;
  const std::string body = "int f(int a, int b) {\n  int c = a * b + a - b;\n  return c * 2 + a * 3 - b;\n}\n";
  qtest::write_file(dir / "a.c", body);
  qtest::write_file(dir / "b.c", body);
  qtest::write_file(dir / "c.c", "int solo(void) { return 1; }\n");
  AnalysisConfig cfg;
  cfg.windowSize = 8;
  const auto r = analyze_project(dir.path(), cfg);
  REQUIRE(r.files.size() == 3);
  CHECK(r.files[0].duplicationRatio == 1.0);
  CHECK(r.files[1].duplicationRatio == 1.0);
  CHECK(r.files[2].duplicationRatio == 0.0);

  cfg.windowSize = 7;
  CHECK_THROWS_AS(analyze_project(dir.path(), cfg), ConfigError);
}
