#include "quperman/health.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>

#include "json_util.hpp"
#include "quperman/error.hpp"
#include "quperman/hash.hpp"
#include "quperman/version.hpp"

namespace quperman {

using detail::Json;

namespace {

constexpr std::array<std::pair<SmellKind, std::string_view>, 9> kSmellNames = {{
    {SmellKind::LongFunction, "LongFunction"},
    {SmellKind::ComplexFunction, "ComplexFunction"},
    {SmellKind::DeepNesting, "DeepNesting"},
    {SmellKind::ManyArguments, "ManyArguments"},
    {SmellKind::BrainMethod, "BrainMethod"},
    {SmellKind::GodModule, "GodModule"},
    {SmellKind::Duplication, "Duplication"},
    {SmellKind::LargeFile, "LargeFile"},
    {SmellKind::LowComment, "LowComment"},
}};

constexpr std::array<std::pair<Severity, std::string_view>, 3> kSeverityNames = {{
    {Severity::Minor, "minor"},
    {Severity::Major, "major"},
    {Severity::Critical, "critical"},
}};

Evidence above(std::string metric, double observed, double threshold) {
  return {std::move(metric), observed, threshold, false};
}

double ratio_of(const Evidence& e) {
  if (e.below) return 1.0;  // density shortfalls never escalate
  if (e.threshold <= 0) return e.observed > 0 ? 4.0 : 1.0;
  return e.observed / e.threshold;
}

SmellFinding finding(SmellKind kind, const std::string& path, int start, int end, std::string function,
                     std::vector<Evidence> evidence) {
  SmellFinding f;
  f.kind = kind;
  f.path = path;
  f.startLine = start;
  f.endLine = end;
  f.function = std::move(function);
  f.evidence = std::move(evidence);
  double ratio = ratio_of(f.evidence.front());
  for (const auto& e : f.evidence) ratio = std::min(ratio, ratio_of(e));
  f.severity = severity_for_ratio(ratio);
  return f;
}

Json maintainability_json(const MaintainabilityIndexReport& m) {
  Json j;
  j["mi"] = m.mi;
  j["normalizedMi"] = m.normalizedMi;
  j["volumeTerm"] = m.volumeTerm;
  j["cyclomaticTerm"] = m.cyclomaticTerm;
  j["locTerm"] = m.locTerm;
  j["commentTerm"] = m.commentTerm;
  return j;
}

Json finding_json(const SmellFinding& f) {
  Json j;
  j["kind"] = to_string(f.kind);
  j["startLine"] = f.startLine;
  j["endLine"] = f.endLine;
  j["function"] = f.function.empty() ? Json(nullptr) : Json(f.function);
  j["severity"] = to_string(f.severity);
  Json ev = Json::array();
  for (const auto& e : f.evidence) {
    Json x;
    x["metric"] = e.metric;
    x["observed"] = e.observed;
    x["comparison"] = e.below ? "<" : ">";
    x["threshold"] = e.threshold;
    ev.push_back(x);
  }
  j["evidence"] = ev;
  return j;
}

}  // namespace

std::string_view to_string(SmellKind kind) {
  for (const auto& [k, name] : kSmellNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string_view to_string(Severity severity) {
  for (const auto& [s, name] : kSeverityNames) {
    if (s == severity) return name;
  }
  return "unknown";
}

SmellKind parse_smell_kind(std::string_view text) {
  for (const auto& [k, name] : kSmellNames) {
    if (name == text) return k;
  }
  throw InputError("unknown smell kind '" + std::string(text) + "'");
}

Severity parse_severity(std::string_view text) {
  for (const auto& [s, name] : kSeverityNames) {
    if (name == text) return s;
  }
  throw InputError("unknown severity '" + std::string(text) + "'");
}

std::string_view to_string(Weighting weighting) {
  return weighting == Weighting::ByLoc ? "byLoc" : "byChangeFrequency";
}

Weighting parse_weighting(std::string_view text) {
  if (text == "byLoc") return Weighting::ByLoc;
  if (text == "byChangeFrequency") return Weighting::ByChangeFrequency;
  throw ConfigError("unknown weighting '" + std::string(text) + "' (expected byLoc or byChangeFrequency)");
}

Severity severity_for_ratio(double ratio) {
  if (ratio >= 4.0) return Severity::Critical;
  if (ratio >= 2.0) return Severity::Major;
  return Severity::Minor;
}

double penalty_for(Severity severity) {
  switch (severity) {
    case Severity::Minor:
      return 0.5;
    case Severity::Major:
      return 1.0;
    case Severity::Critical:
      return 2.0;
  }
  return 0.0;
}

std::vector<SmellFinding> detect_smells(const FileMetrics& file, const ThresholdConfig& t) {
  std::vector<SmellFinding> out;
  const auto& path = file.unit.path;
  for (const auto& fn : file.functions) {
    const double loc = fn.loc;
    const double cc = fn.cyclomatic;
    const double nest = fn.maxNesting;
    if (loc > t.longFunctionLoc) {
      out.push_back(finding(SmellKind::LongFunction, path, fn.startLine, fn.endLine, fn.name,
                            {above("loc", loc, t.longFunctionLoc)}));
    }
    if (cc > t.complexFunctionCyclomatic) {
      out.push_back(finding(SmellKind::ComplexFunction, path, fn.startLine, fn.endLine, fn.name,
                            {above("cyclomatic", cc, t.complexFunctionCyclomatic)}));
    }
    if (nest > t.deepNesting) {
      out.push_back(finding(SmellKind::DeepNesting, path, fn.startLine, fn.endLine, fn.name,
                            {above("maxNesting", nest, t.deepNesting)}));
    }
    if (fn.arity > t.manyArguments) {
      out.push_back(finding(SmellKind::ManyArguments, path, fn.startLine, fn.endLine, fn.name,
                            {above("arity", fn.arity, t.manyArguments)}));
    }
    if (loc > t.brainMethodLoc && cc > t.brainMethodCyclomatic && nest > t.brainMethodNesting) {
      auto f = finding(SmellKind::BrainMethod, path, fn.startLine, fn.endLine, fn.name,
                       {above("loc", loc, t.brainMethodLoc), above("cyclomatic", cc, t.brainMethodCyclomatic),
                        above("maxNesting", nest, t.brainMethodNesting)});
      f.severity = Severity::Critical;
      out.push_back(std::move(f));
    }
  }

  const int lastLine = std::max<int>(1, static_cast<int>(file.unit.lineCount));
  const double fileLoc = file.totalLoc;
  const double fnCount = static_cast<double>(file.functions.size());
  if (fnCount > t.godModuleFunctions && fileLoc > t.godModuleLoc) {
    out.push_back(finding(SmellKind::GodModule, path, 1, lastLine, {},
                          {above("functions", fnCount, t.godModuleFunctions), above("totalLoc", fileLoc, t.godModuleLoc)}));
  }
  if (file.duplicationRatio > t.duplicationRatio) {
    out.push_back(finding(SmellKind::Duplication, path, 1, lastLine, {},
                          {above("duplicationRatio", file.duplicationRatio, t.duplicationRatio)}));
  }
  if (fileLoc > t.largeFileLoc) {
    out.push_back(finding(SmellKind::LargeFile, path, 1, lastLine, {}, {above("totalLoc", fileLoc, t.largeFileLoc)}));
  }
  if (file.commentDensity < t.lowCommentDensity && fileLoc > t.lowCommentMinLoc) {
    auto f = finding(SmellKind::LowComment, path, 1, lastLine, {},
                     {{"commentDensity", file.commentDensity, t.lowCommentDensity, true},
                      above("totalLoc", fileLoc, t.lowCommentMinLoc)});
    f.severity = Severity::Minor;
    out.push_back(std::move(f));
  }

  std::stable_sort(out.begin(), out.end(), [](const SmellFinding& a, const SmellFinding& b) {
    if (a.startLine != b.startLine) return a.startLine < b.startLine;
    return a.kind < b.kind;
  });
  return out;
}

FileHealth score_file(std::string path, std::vector<SmellFinding> findings) {
  FileHealth h;
  h.path = std::move(path);
  double deducted = 0;
  for (const auto& f : findings) {
    const double p = penalty_for(f.severity);
    h.penaltyBreakdown[f.kind] += p;
    deducted += p;
  }
  h.score = std::clamp(kMaxScore - deducted, kMinScore, kMaxScore);
  h.findings = std::move(findings);
  return h;
}

ProjectHealth aggregate_project(std::vector<FileHealth> files, const std::vector<FileMetrics>& metrics,
                                Weighting weighting, const ChangeCounts* changeCounts) {
  if (files.empty()) throw InputError("cannot aggregate project health: no files");
  if (files.size() != metrics.size()) throw InputError("file scores and metrics are not aligned");
  if (weighting == Weighting::ByChangeFrequency && changeCounts == nullptr) {
    throw InputError("byChangeFrequency weighting requires a change-count file");
  }

  std::vector<double> weights;
  weights.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (files[i].path != metrics[i].unit.path) {
      throw InputError("file scores and metrics are not aligned at '" + files[i].path + "'");
    }
    double w = std::max(metrics[i].totalLoc, 1);
    if (weighting == Weighting::ByChangeFrequency) {
      const auto it = changeCounts->find(files[i].path);
      if (it == changeCounts->end()) throw InputError("missing change count for '" + files[i].path + "'");
      w *= 1.0 + std::log2(1.0 + static_cast<double>(it->second));
    }
    weights.push_back(w);
  }

  double num = 0;
  double den = 0;
  double lo = kMaxScore;
  double hi = kMinScore;
  Json digestInput = Json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    num += weights[i] * files[i].score;
    den += weights[i];
    lo = std::min(lo, files[i].score);
    hi = std::max(hi, files[i].score);
    digestInput.push_back(Json::array({files[i].path, weights[i]}));
  }

  ProjectHealth p;
  // Rounding can push the mean a few ulps outside the file range.
  p.score = std::clamp(num / den, lo, hi);
  p.files = std::move(files);
  p.weighting = weighting;
  p.weightsDigest = sha256_hex(digestInput.dump());
  return p;
}

MaintainabilityIndexReport maintainability_index(const FileMetrics& file) {
  double meanV = 0;
  double meanCC = 1;
  if (!file.functions.empty()) {
    double sv = 0;
    double sc = 0;
    for (const auto& f : file.functions) {
      sv += f.halsteadVolume;
      sc += f.cyclomatic;
    }
    meanV = sv / static_cast<double>(file.functions.size());
    meanCC = sc / static_cast<double>(file.functions.size());
  }
  MaintainabilityIndexReport r;
  r.path = file.unit.path;
  r.volumeTerm = 5.2 * std::log(std::max(meanV, 1.0));
  r.cyclomaticTerm = 0.23 * meanCC;
  r.locTerm = 16.2 * std::log(std::max(file.totalLoc, 1));
  r.commentTerm = 50.0 * std::sin(std::sqrt(2.4 * std::max(file.commentDensity, 0.0)));
  r.mi = 171.0 - r.volumeTerm - r.cyclomaticTerm - r.locTerm + r.commentTerm;
  r.normalizedMi = std::clamp(r.mi * 100.0 / 171.0, 0.0, 100.0);
  return r;
}

ChangeCounts parse_change_counts(std::string_view text) {
  ChangeCounts out;
  int lineNo = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    line.remove_prefix(first);

    long long count = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), count);
    const auto consumed = static_cast<std::size_t>(ptr - line.data());
    if (ec != std::errc{} || count < 0 || consumed == line.size() || (line[consumed] != ' ' && line[consumed] != '\t')) {
      throw InputError("change counts line " + std::to_string(lineNo) + ": expected '<count> <path>'");
    }
    std::string_view path = line.substr(consumed);
    path.remove_prefix(path.find_first_not_of(" \t"));
    while (!path.empty() && (path.back() == ' ' || path.back() == '\t')) path.remove_suffix(1);
    if (path.empty()) throw InputError("change counts line " + std::to_string(lineNo) + ": missing path");
    if (path.rfind("./", 0) == 0) path.remove_prefix(2);
    out[std::string(path)] += count;
  }
  return out;
}

HealthReport assess_health(const std::vector<FileMetrics>& files, const ThresholdConfig& thresholds,
                           Weighting weighting, const ChangeCounts* changeCounts, std::string configDigest) {
  std::vector<FileHealth> scored;
  HealthReport report;
  scored.reserve(files.size());
  for (const auto& fm : files) {
    scored.push_back(score_file(fm.unit.path, detect_smells(fm, thresholds)));
    report.maintainability.push_back(maintainability_index(fm));
  }
  report.project = aggregate_project(std::move(scored), files, weighting, changeCounts);
  report.configDigest = std::move(configDigest);
  return report;
}

std::string to_health_document(const HealthReport& report) {
  Json doc;
  doc["schema"] = "health.v1";
  doc["toolVersion"] = kToolVersion;
  doc["configDigest"] = report.configDigest;
  Json project;
  project["score"] = report.project.score;
  project["weighting"] = to_string(report.project.weighting);
  project["weightsDigest"] = report.project.weightsDigest;
  doc["project"] = project;
  Json files = Json::array();
  for (std::size_t i = 0; i < report.project.files.size(); ++i) {
    const auto& f = report.project.files[i];
    Json j;
    j["path"] = f.path;
    j["score"] = f.score;
    Json breakdown = Json::object();
    for (const auto& [kind, pts] : f.penaltyBreakdown) breakdown[std::string(to_string(kind))] = pts;
    j["penaltyBreakdown"] = breakdown;
    if (i < report.maintainability.size()) j["maintainability"] = maintainability_json(report.maintainability[i]);
    Json findings = Json::array();
    for (const auto& x : f.findings) findings.push_back(finding_json(x));
    j["findings"] = findings;
    files.push_back(j);
  }
  doc["files"] = files;
  return detail::dump_document(doc);
}

HealthReport parse_health_document(std::string_view text) {
  constexpr std::string_view what = "health document";
  const auto doc = detail::parse_json(text, what);
  detail::check_schema(doc, "health.v1", what);
  HealthReport r;
  r.configDigest = detail::require_string(doc, "configDigest", what);
  const auto& project = detail::require(doc, "project", what);
  r.project.score = detail::require_number(project, "score", what);
  r.project.weighting = parse_weighting(detail::require_string(project, "weighting", what));
  r.project.weightsDigest = detail::require_string(project, "weightsDigest", what);
  const auto& files = detail::require(doc, "files", what);
  if (!files.is_array()) throw InputError(std::string(what) + ": 'files' must be an array");
  for (const auto& fj : files) {
    FileHealth fh;
    fh.path = detail::require_string(fj, "path", what);
    fh.score = detail::require_number(fj, "score", what);
    for (const auto& [k, v] : detail::require(fj, "penaltyBreakdown", what).items()) {
      if (!v.is_number()) throw InputError(std::string(what) + ": penalty must be a number");
      fh.penaltyBreakdown[parse_smell_kind(k)] = v.get<double>();
    }
    for (const auto& x : detail::require(fj, "findings", what)) {
      SmellFinding f;
      f.kind = parse_smell_kind(detail::require_string(x, "kind", what));
      f.path = fh.path;
      f.startLine = static_cast<int>(detail::require_integer(x, "startLine", what));
      f.endLine = static_cast<int>(detail::require_integer(x, "endLine", what));
      const auto& fn = detail::require(x, "function", what);
      if (fn.is_string()) f.function = fn.get<std::string>();
      f.severity = parse_severity(detail::require_string(x, "severity", what));
      for (const auto& e : detail::require(x, "evidence", what)) {
        Evidence ev;
        ev.metric = detail::require_string(e, "metric", what);
        ev.observed = detail::require_number(e, "observed", what);
        ev.threshold = detail::require_number(e, "threshold", what);
        ev.below = detail::require_string(e, "comparison", what) == "<";
        f.evidence.push_back(std::move(ev));
      }
      fh.findings.push_back(std::move(f));
    }
    if (const auto it = fj.find("maintainability"); it != fj.end()) {
      MaintainabilityIndexReport m;
      m.path = fh.path;
      m.mi = detail::require_number(*it, "mi", what);
      m.normalizedMi = detail::require_number(*it, "normalizedMi", what);
      m.volumeTerm = detail::require_number(*it, "volumeTerm", what);
      m.cyclomaticTerm = detail::require_number(*it, "cyclomaticTerm", what);
      m.locTerm = detail::require_number(*it, "locTerm", what);
      m.commentTerm = detail::require_number(*it, "commentTerm", what);
      r.maintainability.push_back(std::move(m));
    }
    r.project.files.push_back(std::move(fh));
  }
  return r;
}

}  // namespace quperman
