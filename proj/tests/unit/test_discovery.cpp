#include <doctest.h>

#include <string>
#include <vector>

#include "quperman/discovery.hpp"
#include "quperman/error.hpp"
#include "quperman/hash.hpp"
#include "support.hpp"

using namespace quperman;

namespace {

std::vector<std::string> paths(const std::vector<SourceUnit>& units) {
  std::vector<std::string> out;
  for (const auto& u : units) out.push_back(u.path);
  return out;
}

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("default discovery finds the fixture corpus sorted by path") {
  const auto units = discover_sources(qtest::corpus_dir(), default_discovery_options());
  const std::vector<std::string> want = {"c/brain.c",      "c/branches.c",    "c/clean.c",       "cpp/shapes.cpp",
                                         "go/server.go",   "java/Account.java", "js/util.js",    "lua/config.lua",
                                         "python/nested.py", "python/stats.py", "ruby/report.rb", "ts/service.ts"};
  CHECK(paths(units) == want);
  for (const auto& u : units) {
    CHECK(u.contentHash == sha256_hex(qtest::read_file(qtest::corpus_dir() / u.path)));
    CHECK_FALSE(u.languageTag.empty());
  }
}

TEST_CASE("include, exclude and binary filtering") {
  qtest::TempDir dir;
  qtest::write_file(dir / "src/a.c", "int a;\n");
  qtest::write_file(dir / "src/b.py", "b = 1\n");
  qtest::write_file(dir / "src/gen/c.c", "int c;\n");
  qtest::write_file(dir / "node_modules/x.js", "var x;\n");
  qtest::write_file(dir / "notes.txt", "hello\n");
  qtest::write_file(dir / "blob.c", std::string("int\0x;", 6));

  std::vector<std::string> warnings;
  FrontendRegistry reg;
  const auto all = discover_sources(dir.path(), default_discovery_options(), reg, warnings);
  CHECK(paths(all) == std::vector<std::string>{"src/a.c", "src/b.py", "src/gen/c.c"});
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("blob.c") != std::string::npos);

  DiscoveryOptions only;
  only.include = {"src/*.c", "*.txt"};
  only.exclude = {"**/gen/**"};
  CHECK(paths(discover_sources(dir.path(), only)) == std::vector<std::string>{"notes.txt", "src/a.c"});

  DiscoveryOptions dirExclude;
  dirExclude.include = {"**/*.c"};
  dirExclude.exclude = {"src/**"};
  CHECK(paths(discover_sources(dir.path(), dirExclude)).empty());
}

TEST_CASE("language tags follow the registry") {
  qtest::TempDir dir;
  qtest::write_file(dir / "a.py", "x = 1\n");
  qtest::write_file(dir / "b.go", "package b\n");
  const auto units = discover_sources(dir.path(), default_discovery_options());
  REQUIRE(units.size() == 2);
  CHECK(units[0].languageTag == "python");
  CHECK(units[1].languageTag == "generic");
  CHECK(units[0].lineCount == 1);
}

TEST_CASE("a missing root is an input error") {
  CHECK_THROWS_AS(discover_sources(qtest::source_dir() / "does-not-exist", default_discovery_options()), InputError);
  CHECK_THROWS_AS(discover_sources(qtest::corpus_dir() / "c" / "clean.c", default_discovery_options()), InputError);
}
