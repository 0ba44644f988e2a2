#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace qtest {

namespace fs = std::filesystem;

/// Every randomized property uses this seed so failures replay exactly.
inline constexpr std::uint64_t kSeed = 0x5EED2024;

inline fs::path source_dir() { return QUPERMAN_SOURCE_DIR; }
inline fs::path corpus_dir() { return source_dir() / "tests" / "fixtures" / "corpus"; }
inline fs::path fixtures_dir() { return source_dir() / "tests" / "fixtures"; }
inline fs::path golden_dir() { return source_dir() / "tests" / "golden"; }
inline fs::path data_dir() { return source_dir() / "data"; }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("quperman-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

struct RunResult {
  int exitCode = -1;
  std::string out;
  std::string err;
};

inline std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

/// Runs the CLI with `args` (already shell-quoted) and an optional
/// environment prefix such as "QUPERMAN_FORMAT=structured".
inline RunResult run_cli(const std::string& args, const std::string& env = {}) {
  TempDir tmp;
  const auto out = tmp / "stdout";
  const auto err = tmp / "stderr";
  std::string cmd = "env -u QUPERMAN_FORMAT -u QUPERMAN_STORE -u QUPERMAN_CONFIG -u QUPERMAN_POLICY -u QUPERMAN_FLOOR "
                    "-u QUPERMAN_WORKERS -u QUPERMAN_BIND " +
                    env + " " + quote(QUPERMAN_CLI) + " " + args + " >" + quote(out) + " 2>" + quote(err);
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

}  // namespace qtest
