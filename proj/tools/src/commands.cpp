#include "quperman/app/commands.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quperman/analysis.hpp"
#include "quperman/config.hpp"
#include "quperman/error.hpp"
#include "quperman/gate.hpp"
#include "quperman/health.hpp"
#include "quperman/roadmap.hpp"

namespace quperman::app {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return {kExitInputError, {}, std::string("error: ") + e.what() + "\n", {}};
  } catch (const std::exception& e) {
    return {kExitInternalError, {}, std::string("internal error: ") + e.what() + "\n", {}};
  }
}

std::string document_with_newline(const Json& j) { return j.dump(2) + "\n"; }

std::string human_health(const HealthReport& report) {
  std::ostringstream out;
  const auto& p = report.project;
  out << "project score " << fixed(p.score) << " (" << to_string(p.weighting) << ", " << p.files.size()
      << " files)\n";
  for (const auto& f : p.files) {
    out << "  " << fixed(f.score) << "  " << f.path << "\n";
    for (const auto& x : f.findings) {
      out << "         " << to_string(x.kind) << " (" << to_string(x.severity) << ") lines " << x.startLine << "-"
          << x.endLine;
      if (!x.function.empty()) out << " in " << x.function;
      out << "\n";
    }
  }
  return out.str();
}

std::string human_distribution(const BenchmarkDistribution& d) {
  return "n=" + std::to_string(d.n) + " p10=" + fixed(d.p10) + " p50=" + fixed(d.p50) + " p90=" + fixed(d.p90) +
         " (" + d.method + ")\n";
}

std::string human_evaluation(const TargetEvaluation& e) {
  std::ostringstream out;
  out << e.projectId << ": " << fixed(e.currentLevel) << " -> " << fixed(e.targetLevel) << "\n";
  out << "  benefit delta   " << fixed(e.benefitDelta, 4) << "\n";
  out << "  total cost      " << fixed(e.totalCost) << " (refactoring " << fixed(e.refactoringCost) << ", barriers "
      << fixed(e.barrierCost) << ")\n";
  for (const auto& b : e.barriersCrossed) {
    out << "  barrier at " << fixed(b.position) << "  " << to_string(b.category) << " (" << fixed(b.fixedCost)
        << ")  " << b.rationale << "\n";
  }
  out << "  escalation zone [" << fixed(e.escalationZone.from) << ", " << fixed(e.escalationZone.to)
      << (e.escalationZone.endsAtBarrier ? ")" : "]") << "\n";
  if (e.targetPercentile) out << "  target percentile " << fixed(*e.targetPercentile, 1) << "\n";
  if (e.leadersGapNote) out << "  benchmark        " << to_string(*e.leadersGapNote) << "\n";
  return out.str();
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "human") return Format::Human;
  if (text == "structured") return Format::Structured;
  throw InputError("unknown format '" + std::string(text) + "' (expected human or structured)");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())) || !out.flush()) {
    throw InputError("cannot write '" + path.string() + "'");
  }
}

CommandResult cmd_analyze(const AnalyzeOptions& o) {
  return guarded([&] {
    ToolConfig config = o.configPath ? load_config(*o.configPath) : ToolConfig{};
    if (o.workers) config.analysis.workers = *o.workers;
    std::optional<ChangeCounts> changes;
    if (o.changeCounts) changes = parse_change_counts(read_text_file(*o.changeCounts));

    const auto analysis = analyze_project(o.root, config.analysis);
    if (analysis.files.empty()) throw InputError("no source files found under '" + o.root.string() + "'");
    const auto report = assess_health(analysis.files, config.thresholds, config.weighting,
                                      changes ? &*changes : nullptr, config_digest(config));
    const auto healthDoc = to_health_document(report);
    if (o.metricsOut) write_text_file(*o.metricsOut, to_analysis_document(analysis));
    if (o.outPath) write_text_file(*o.outPath, healthDoc);

    CommandResult r;
    r.warnings = analysis.warnings;
    r.stdoutText = o.format == Format::Structured ? healthDoc : human_health(report);
    return r;
  });
}

CommandResult cmd_bench_add(const BenchAddOptions& o) {
  return guarded([&] {
    if (o.score.has_value() == o.healthPath.has_value()) {
      throw InputError("bench add needs exactly one of --score or --health");
    }
    const double score =
        o.score ? *o.score : parse_health_document(read_text_file(*o.healthPath)).project.score;
    auto store = load_store(o.store);
    const auto entry = ingest_entry(store, score, o.projectId, parse_tag_list(o.tags), o.recordedAt);
    save_store(store, o.store);
    CommandResult r;
    r.stdoutText = o.format == Format::Structured
                       ? to_entry_document(entry)
                       : "stored " + entry.projectId + " score " + fixed(entry.score) + " (" +
                             std::to_string(store.size()) + " entries)\n";
    return r;
  });
}

CommandResult cmd_bench_stats(const BenchQueryOptions& o) {
  return guarded([&] {
    const auto store = load_store(o.store);
    const auto d = distribution(store, parse_tag_list(o.filter));
    CommandResult r;
    r.stdoutText = o.format == Format::Structured ? to_distribution_document(d) : human_distribution(d);
    return r;
  });
}

CommandResult cmd_bench_pos(const BenchQueryOptions& o) {
  return guarded([&] {
    if (!o.score) throw InputError("bench pos needs --score");
    const auto store = load_store(o.store);
    const auto filter = parse_tag_list(o.filter);
    const auto scores = store.scores(filter);
    if (scores.empty()) throw EmptyDistributionError("no benchmark entries match the filter");
    const double pct = percentile_of(*o.score, scores);
    CommandResult r;
    if (o.format == Format::Structured) {
      Json j;
      j["schema"] = "position.v1";
      Json f = Json::object();
      for (const auto& [k, v] : filter) f[k] = v;
      j["filter"] = f;
      j["n"] = scores.size();
      j["score"] = *o.score;
      j["percentile"] = pct;
      r.stdoutText = document_with_newline(j);
    } else {
      r.stdoutText = "score " + fixed(*o.score) + " sits at percentile " + fixed(pct, 1) + " of " +
                     std::to_string(scores.size()) + " entries\n";
    }
    return r;
  });
}

EvaluationDocuments evaluate_scenario(std::string_view scenarioText, const BenchmarkStore* store) {
  const auto scenario = parse_scenario(scenarioText, store);
  const auto roadmap = build_roadmap(scenario);
  return {to_evaluation_document(roadmap.evaluation), to_roadmap_document(roadmap)};
}

CommandResult cmd_eval(const EvalOptions& o) {
  return guarded([&] {
    std::optional<BenchmarkStore> store;
    if (o.store) store = load_store(*o.store);
    const auto text = read_text_file(o.scenarioPath);
    const auto docs = evaluate_scenario(text, store ? &*store : nullptr);
    if (o.outPath) write_text_file(*o.outPath, docs.roadmap);
    CommandResult r;
    if (o.format == Format::Structured) {
      r.stdoutText = docs.evaluation;
    } else {
      r.stdoutText = human_evaluation(evaluate_target(parse_scenario(text, store ? &*store : nullptr)));
    }
    return r;
  });
}

CommandResult cmd_gate(const GateOptions& o) {
  return guarded([&] {
    const auto before = parse_health_document(read_text_file(o.before));
    const auto after = parse_health_document(read_text_file(o.after));
    const auto result = gate_check(before.project, after.project, parse_gate_policy(o.policy), o.floor);
    CommandResult r;
    r.exitCode = result.pass ? kExitOk : kExitGateFailed;
    if (o.format == Format::Structured) {
      r.stdoutText = to_gate_document(result);
    } else {
      std::ostringstream out;
      out << "gate " << (result.pass ? "PASS" : "FAIL") << " (" << to_string(result.policy);
      if (result.floorLevel) out << " " << fixed(*result.floorLevel);
      out << ")\n";
      for (const auto& v : result.violations) {
        out << "  " << v.path << ": " << (v.before ? fixed(*v.before) : std::string("new")) << " -> "
            << fixed(v.after) << "\n";
      }
      r.stdoutText = out.str();
    }
    return r;
  });
}

CommandResult cmd_defaults() {
  return guarded([] {
    CommandResult r;
    r.stdoutText = default_scenario_document();
    return r;
  });
}

}  // namespace quperman::app
