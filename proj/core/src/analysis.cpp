#include "quperman/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "json_util.hpp"
#include "quperman/error.hpp"
#include "quperman/hash.hpp"
#include "quperman/version.hpp"

namespace quperman {

using detail::Json;

namespace {

std::string_view to_string(NestedFunctions n) { return n == NestedFunctions::Separate ? "separate" : "merged"; }

Json canonical(const AnalysisConfig& c) {
  Json j;
  j["include"] = c.discovery.include;
  j["exclude"] = c.discovery.exclude;
  Json overrides = Json::array();
  for (const auto& [glob, id] : c.frontendOverrides) overrides.push_back(Json::array({glob, id}));
  j["frontends"] = overrides;
  j["windowSize"] = c.windowSize;
  j["nestedFunctions"] = to_string(c.nested);
  return j;
}

struct FileTask {
  FileMetrics metrics;
  std::vector<std::string> normalized;
  std::vector<std::string> warnings;
};

FileTask analyze_one(LoadedSource& src, NestedFunctions nested) {
  FileTask task;
  auto tokens = src.frontend->tokenize(src.content);
  src.unit.tokenCount = tokens.tokens.size();
  auto extracted = extract_functions(*src.frontend, tokens, nested);
  for (auto& w : tokens.warnings) task.warnings.push_back(src.unit.path + ": " + w);
  for (auto& w : extracted.warnings) task.warnings.push_back(src.unit.path + ": " + w);
  task.normalized = normalized_tokens(tokens);
  task.metrics = compute_file_metrics(src.unit, tokens, extracted.spans);
  return task;
}

Json function_json(const FunctionMetrics& f) {
  Json j;
  j["name"] = f.name;
  j["startLine"] = f.startLine;
  j["endLine"] = f.endLine;
  j["loc"] = f.loc;
  j["cyclomatic"] = f.cyclomatic;
  j["maxNesting"] = f.maxNesting;
  j["arity"] = f.arity;
  j["halsteadLength"] = f.halsteadLength;
  j["halsteadVocabulary"] = f.halsteadVocabulary;
  j["halsteadVolume"] = f.halsteadVolume;
  j["commentLines"] = f.commentLines;
  return j;
}

Json file_json(const FileMetrics& fm) {
  Json j;
  j["path"] = fm.unit.path;
  j["language"] = fm.unit.languageTag;
  j["contentHash"] = fm.unit.contentHash;
  j["lineCount"] = fm.unit.lineCount;
  j["tokenCount"] = fm.unit.tokenCount;
  j["totalLoc"] = fm.totalLoc;
  j["commentLines"] = fm.commentLines;
  j["commentDensity"] = fm.commentDensity;
  j["duplicationRatio"] = fm.duplicationRatio;
  Json fns = Json::array();
  for (const auto& f : fm.functions) fns.push_back(function_json(f));
  j["functions"] = fns;
  return j;
}

}  // namespace

std::string analysis_config_digest(const AnalysisConfig& config) { return sha256_hex(canonical(config).dump()); }

AnalysisResult analyze_project(const std::filesystem::path& root, const AnalysisConfig& config) {
  if (config.windowSize < kMinWindowSize) {
    throw ConfigError("windowSize must be at least " + std::to_string(kMinWindowSize));
  }
  FrontendRegistry registry;
  for (const auto& [glob, id] : config.frontendOverrides) registry.add_override(glob, id);

  AnalysisResult result;
  result.configDigest = analysis_config_digest(config);
  auto sources = load_sources(root, config.discovery, registry, result.warnings);

  std::vector<FileTask> tasks(sources.size());
  std::vector<std::exception_ptr> errors(sources.size());
  std::size_t workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.workers;
  workers = std::min(workers, std::max<std::size_t>(sources.size(), 1));

  // Tasks share nothing but the index counter; results land at their
  // path-ordered slot.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) {
      try {
        tasks[i] = analyze_one(sources[i], config.nested);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::vector<std::string>> streams;
  streams.reserve(tasks.size());
  for (auto& t : tasks) streams.push_back(std::move(t.normalized));
  const auto ratios = duplication_ratio(streams, config.windowSize);

  result.files.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    tasks[i].metrics.duplicationRatio = ratios[i];
    for (auto& w : tasks[i].warnings) result.warnings.push_back(std::move(w));
    result.files.push_back(std::move(tasks[i].metrics));
  }
  return result;
}

std::string to_analysis_document(const AnalysisResult& result) {
  Json doc;
  doc["schema"] = "analysis.v1";
  doc["toolVersion"] = kToolVersion;
  doc["configDigest"] = result.configDigest;
  doc["warnings"] = result.warnings;
  Json files = Json::array();
  for (const auto& f : result.files) files.push_back(file_json(f));
  doc["files"] = files;
  return detail::dump_document(doc);
}

AnalysisResult parse_analysis_document(std::string_view text) {
  constexpr std::string_view what = "analysis document";
  const auto doc = detail::parse_json(text, what);
  detail::check_schema(doc, "analysis.v1", what);
  AnalysisResult r;
  r.configDigest = detail::require_string(doc, "configDigest", what);
  try {
    r.warnings = detail::require(doc, "warnings", what).get<std::vector<std::string>>();
    for (const auto& fj : detail::require(doc, "files", what)) {
      FileMetrics fm;
      fm.unit.path = detail::require_string(fj, "path", what);
      fm.unit.languageTag = detail::require_string(fj, "language", what);
      fm.unit.contentHash = detail::require_string(fj, "contentHash", what);
      fm.unit.lineCount = static_cast<std::size_t>(detail::require_integer(fj, "lineCount", what));
      fm.unit.tokenCount = static_cast<std::size_t>(detail::require_integer(fj, "tokenCount", what));
      fm.totalLoc = static_cast<int>(detail::require_integer(fj, "totalLoc", what));
      fm.commentLines = static_cast<int>(detail::require_integer(fj, "commentLines", what));
      fm.commentDensity = detail::require_number(fj, "commentDensity", what);
      fm.duplicationRatio = detail::require_number(fj, "duplicationRatio", what);
      for (const auto& x : detail::require(fj, "functions", what)) {
        FunctionMetrics f;
        f.name = detail::require_string(x, "name", what);
        f.startLine = static_cast<int>(detail::require_integer(x, "startLine", what));
        f.endLine = static_cast<int>(detail::require_integer(x, "endLine", what));
        f.loc = static_cast<int>(detail::require_integer(x, "loc", what));
        f.cyclomatic = static_cast<int>(detail::require_integer(x, "cyclomatic", what));
        f.maxNesting = static_cast<int>(detail::require_integer(x, "maxNesting", what));
        f.arity = static_cast<int>(detail::require_integer(x, "arity", what));
        f.halsteadLength = static_cast<std::size_t>(detail::require_integer(x, "halsteadLength", what));
        f.halsteadVocabulary = static_cast<std::size_t>(detail::require_integer(x, "halsteadVocabulary", what));
        f.halsteadVolume = detail::require_number(x, "halsteadVolume", what);
        f.commentLines = static_cast<int>(detail::require_integer(x, "commentLines", what));
        fm.functions.push_back(std::move(f));
      }
      r.files.push_back(std::move(fm));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  return r;
}

}  // namespace quperman
