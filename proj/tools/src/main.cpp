#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "quperman/app/commands.hpp"
#include "quperman/app/service.hpp"
#include "quperman/error.hpp"
#include "quperman/version.hpp"

namespace app = quperman::app;

namespace {

app::Service* g_service = nullptr;

extern "C" void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int emit(const app::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << r.stdoutText << std::flush;
  std::cerr << r.stderrText << std::flush;
  return r.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"quperman: maintainability metrics, code health and cost/benefit target setting"};
  cli.set_version_flag("--version", std::string(quperman::kToolVersion));
  cli.require_subcommand(1);

  std::string format;
  cli.add_option("--format", format, "Output format: human or structured (eval defaults to structured)")
      ->envname("QUPERMAN_FORMAT")
      ->check(CLI::IsMember({"human", "structured"}));

  // analyze
  app::AnalyzeOptions analyze;
  std::string analyzeRoot;
  std::string analyzeConfig, analyzeOut, analyzeMetrics, analyzeChanges;
  std::size_t analyzeWorkers = 0;
  auto* cmdAnalyze = cli.add_subcommand("analyze", "Measure a source tree and write its health.v1 report");
  cmdAnalyze->add_option("root", analyzeRoot, "Source tree root")->required();
  cmdAnalyze->add_option("--config", analyzeConfig, "Config document")->envname("QUPERMAN_CONFIG");
  cmdAnalyze->add_option("--out", analyzeOut, "Write health.v1 here");
  cmdAnalyze->add_option("--metrics-out", analyzeMetrics, "Write analysis.v1 here");
  cmdAnalyze->add_option("--change-counts", analyzeChanges, "Per-file change counts ('<count> <path>' lines)");
  auto* workersOpt =
      cmdAnalyze->add_option("--workers", analyzeWorkers, "Worker threads (0 = all cores)")->envname("QUPERMAN_WORKERS");

  // bench
  auto* cmdBench = cli.add_subcommand("bench", "Benchmark store operations");
  cmdBench->require_subcommand(1);
  std::string store;
  std::string projectId, healthPath, recordedAt;
  double score = 0;
  std::vector<std::string> tags;
  auto* benchAdd = cmdBench->add_subcommand("add", "Ingest or replace a project's score");
  benchAdd->add_option("--store", store, "bench.v1 store file")->envname("QUPERMAN_STORE")->required();
  benchAdd->add_option("--id", projectId, "Project id")->required();
  auto* addScore = benchAdd->add_option("--score", score, "Project score in [1, 10]");
  auto* addHealth = benchAdd->add_option("--health", healthPath, "Take the score from a health.v1 report");
  addScore->excludes(addHealth);
  benchAdd->add_option("--tag", tags, "Tag key=value (repeatable)");
  benchAdd->add_option("--recorded-at", recordedAt, "UTC timestamp YYYY-MM-DDThh:mm:ssZ");

  auto* benchStats = cmdBench->add_subcommand("stats", "Leaders/Laggards distribution");
  benchStats->add_option("--store", store, "bench.v1 store file")->envname("QUPERMAN_STORE")->required();
  benchStats->add_option("--tag", tags, "Filter key=value (repeatable)");

  auto* benchPos = cmdBench->add_subcommand("pos", "Percentile position of a score");
  benchPos->add_option("--store", store, "bench.v1 store file")->envname("QUPERMAN_STORE")->required();
  benchPos->add_option("--score", score, "Score to position")->required();
  benchPos->add_option("--tag", tags, "Filter key=value (repeatable)");

  // eval
  std::string scenario, evalStore, evalOut;
  auto* cmdEval = cli.add_subcommand("eval", "Evaluate a target scenario; prints evaluation.v1, writes roadmap.v1");
  cmdEval->add_option("scenario", scenario, "scenario.v1 document")->required();
  cmdEval->add_option("--store", evalStore, "bench.v1 store for benchmark context")->envname("QUPERMAN_STORE");
  cmdEval->add_option("--out", evalOut, "Write roadmap.v1 here");

  // gate
  std::string before, after, policy = "noDecline";
  double floorLevel = 0;
  auto* cmdGate = cli.add_subcommand("gate", "Quality gate over two health.v1 reports (exit 1 on failure)");
  cmdGate->add_option("before", before, "Baseline health.v1")->required();
  cmdGate->add_option("after", after, "Candidate health.v1")->required();
  cmdGate->add_option("--policy", policy, "noDecline or floor")->envname("QUPERMAN_POLICY");
  auto* floorOpt = cmdGate->add_option("--floor", floorLevel, "Floor level for the floor policy")->envname("QUPERMAN_FLOOR");

  // defaults
  auto* cmdDefaults = cli.add_subcommand("defaults", "Print a scenario.v1 with every parameter at its default");

  // serve
  std::string bind = "127.0.0.1:8787", serveStore, serveRoot, serveConfig, serveStatic;
  auto* cmdServe = cli.add_subcommand("serve", "Run the local /api/v1 service");
  cmdServe->add_option("--bind", bind, "host:port (loopback by default)")->envname("QUPERMAN_BIND");
  cmdServe->add_option("--store", serveStore, "bench.v1 store file")->envname("QUPERMAN_STORE")->required();
  cmdServe->add_option("--root", serveRoot, "Source tree served by /api/v1/project/health");
  cmdServe->add_option("--config", serveConfig, "Config document")->envname("QUPERMAN_CONFIG");
  cmdServe->add_option("--static", serveStatic, "Directory of UI assets served at /");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitInputError;
  }

  try {
    const auto fmt = format.empty() ? app::Format::Human : app::parse_format(format);
    if (*cmdAnalyze) {
      analyze.root = analyzeRoot;
      if (!analyzeConfig.empty()) analyze.configPath = analyzeConfig;
      if (!analyzeOut.empty()) analyze.outPath = analyzeOut;
      if (!analyzeMetrics.empty()) analyze.metricsOut = analyzeMetrics;
      if (!analyzeChanges.empty()) analyze.changeCounts = analyzeChanges;
      if (*workersOpt) analyze.workers = analyzeWorkers;
      analyze.format = fmt;
      return emit(app::cmd_analyze(analyze));
    }
    if (*benchAdd) {
      app::BenchAddOptions o{store, projectId, std::nullopt, std::nullopt, tags, std::nullopt, fmt};
      if (*addScore) o.score = score;
      if (*addHealth) o.healthPath = healthPath;
      if (!recordedAt.empty()) o.recordedAt = recordedAt;
      return emit(app::cmd_bench_add(o));
    }
    if (*benchStats) return emit(app::cmd_bench_stats({store, tags, std::nullopt, fmt}));
    if (*benchPos) return emit(app::cmd_bench_pos({store, tags, score, fmt}));
    if (*cmdEval) {
      app::EvalOptions o;
      o.scenarioPath = scenario;
      if (!evalStore.empty()) o.store = evalStore;
      if (!evalOut.empty()) o.outPath = evalOut;
      o.format = format.empty() ? app::Format::Structured : fmt;
      return emit(app::cmd_eval(o));
    }
    if (*cmdGate) {
      app::GateOptions o{before, after, policy, std::nullopt, fmt};
      if (*floorOpt) o.floor = floorLevel;
      return emit(app::cmd_gate(o));
    }
    if (*cmdDefaults) return emit(app::cmd_defaults());
    if (*cmdServe) {
      const auto [host, port] = app::parse_bind_address(bind);
      app::ServiceOptions o;
      o.storePath = serveStore;
      if (!serveRoot.empty()) o.corpusRoot = serveRoot;
      if (!serveConfig.empty()) o.configPath = serveConfig;
      if (!serveStatic.empty()) o.staticDir = serveStatic;
      app::Service service(std::move(o));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on http://" << host << ":" << port << "\n";
      const bool ok = service.listen(host, port);
      g_service = nullptr;
      if (!ok) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return app::kExitInputError;
      }
      return app::kExitOk;
    }
  } catch (const quperman::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return app::kExitInternalError;
  }
  return app::kExitInternalError;
}
