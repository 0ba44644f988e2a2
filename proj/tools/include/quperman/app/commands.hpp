#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/benchmark.hpp"

namespace quperman::app {

/// Process exit codes. CI depends on these exact values.
enum ExitCode : int {
  kExitOk = 0,
  kExitGateFailed = 1,
  kExitInputError = 2,
  kExitInternalError = 3,
};

enum class Format { Human, Structured };
Format parse_format(std::string_view text);

struct CommandResult {
  int exitCode = kExitOk;
  std::string stdoutText;
  std::string stderrText;
  std::vector<std::string> warnings;
};

struct AnalyzeOptions {
  std::filesystem::path root;
  std::optional<std::filesystem::path> configPath;
  std::optional<std::filesystem::path> outPath;      ///< health.v1
  std::optional<std::filesystem::path> metricsOut;   ///< analysis.v1
  std::optional<std::filesystem::path> changeCounts;
  std::optional<std::size_t> workers;                ///< overrides the config
  Format format = Format::Human;
};

struct BenchAddOptions {
  std::filesystem::path store;
  std::string projectId;
  std::optional<double> score;
  std::optional<std::filesystem::path> healthPath;  ///< take the project score from a health.v1 file
  std::vector<std::string> tags;                    ///< key=value
  std::optional<std::string> recordedAt;
  Format format = Format::Human;
};

struct BenchQueryOptions {
  std::filesystem::path store;
  std::vector<std::string> filter;  ///< key=value
  std::optional<double> score;      ///< required by `pos`
  Format format = Format::Human;
};

struct EvalOptions {
  std::filesystem::path scenarioPath;
  std::optional<std::filesystem::path> store;
  std::optional<std::filesystem::path> outPath;  ///< roadmap.v1
  Format format = Format::Structured;
};

struct GateOptions {
  std::filesystem::path before;
  std::filesystem::path after;
  std::string policy = "noDecline";
  std::optional<double> floor;
  Format format = Format::Human;
};

CommandResult cmd_analyze(const AnalyzeOptions& options);
CommandResult cmd_bench_add(const BenchAddOptions& options);
CommandResult cmd_bench_stats(const BenchQueryOptions& options);
CommandResult cmd_bench_pos(const BenchQueryOptions& options);
CommandResult cmd_eval(const EvalOptions& options);
CommandResult cmd_gate(const GateOptions& options);
CommandResult cmd_defaults();

/// Both model documents for one scenario. The CLI and the service render
/// evaluations only through this function.
struct EvaluationDocuments {
  std::string evaluation;  ///< evaluation.v1
  std::string roadmap;     ///< roadmap.v1
};
EvaluationDocuments evaluate_scenario(std::string_view scenarioText, const BenchmarkStore* store);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace quperman::app
