#include "quperman/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "quperman/error.hpp"
#include "quperman/glob.hpp"
#include "quperman/hash.hpp"

namespace quperman {

using detail::Json;

namespace {

struct ThresholdField {
  std::string_view key;
  double ThresholdConfig::*member;
};

constexpr ThresholdField kThresholdFields[] = {
    {"longFunctionLoc", &ThresholdConfig::longFunctionLoc},
    {"complexFunctionCyclomatic", &ThresholdConfig::complexFunctionCyclomatic},
    {"deepNesting", &ThresholdConfig::deepNesting},
    {"manyArguments", &ThresholdConfig::manyArguments},
    {"brainMethodLoc", &ThresholdConfig::brainMethodLoc},
    {"brainMethodCyclomatic", &ThresholdConfig::brainMethodCyclomatic},
    {"brainMethodNesting", &ThresholdConfig::brainMethodNesting},
    {"godModuleFunctions", &ThresholdConfig::godModuleFunctions},
    {"godModuleLoc", &ThresholdConfig::godModuleLoc},
    {"duplicationRatio", &ThresholdConfig::duplicationRatio},
    {"largeFileLoc", &ThresholdConfig::largeFileLoc},
    {"lowCommentDensity", &ThresholdConfig::lowCommentDensity},
    {"lowCommentMinLoc", &ThresholdConfig::lowCommentMinLoc},
};

std::vector<std::string> glob_list(const Json& v, std::string_view key) {
  if (!v.is_array()) throw ConfigError("config: '" + std::string(key) + "' must be a list of globs");
  std::vector<std::string> out;
  for (const auto& g : v) {
    if (!g.is_string()) throw ConfigError("config: '" + std::string(key) + "' entries must be strings");
    Glob check(g.get<std::string>());  // rejects malformed patterns early
    out.push_back(g.get<std::string>());
  }
  return out;
}

std::size_t positive_size(const Json& v, std::string_view key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("config: '" + std::string(key) + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Json canonical_json(const ToolConfig& c) {
  Json j;
  j["include"] = c.analysis.discovery.include;
  j["exclude"] = c.analysis.discovery.exclude;
  Json fe = Json::object();
  for (const auto& [glob, id] : c.analysis.frontendOverrides) fe[glob] = id;
  j["frontends"] = fe;
  j["windowSize"] = c.analysis.windowSize;
  j["nestedFunctions"] = c.analysis.nested == NestedFunctions::Separate ? "separate" : "merged";
  j["weighting"] = to_string(c.weighting);
  Json th;
  for (const auto& f : kThresholdFields) th[std::string(f.key)] = c.thresholds.*f.member;
  j["thresholds"] = th;
  return j;
}

}  // namespace

ToolConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = detail::parse_json(text, "config");
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  ToolConfig c;
  const auto known = FrontendRegistry::known_ids();
  for (const auto& [key, v] : doc.items()) {
    if (key == "include") {
      c.analysis.discovery.include = glob_list(v, key);
    } else if (key == "exclude") {
      c.analysis.discovery.exclude = glob_list(v, key);
    } else if (key == "frontends") {
      if (!v.is_object()) throw ConfigError("config: 'frontends' must map globs to frontend ids");
      for (const auto& [glob, id] : v.items()) {
        if (!id.is_string()) throw ConfigError("config: frontend id for '" + glob + "' must be a string");
        const auto name = id.get<std::string>();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          throw ConfigError("config: unknown frontend '" + name + "' for '" + glob + "'");
        }
        Glob check(glob);
        c.analysis.frontendOverrides.emplace_back(glob, name);
      }
    } else if (key == "windowSize") {
      c.analysis.windowSize = positive_size(v, key);
      if (c.analysis.windowSize < kMinWindowSize) {
        throw ConfigError("config: 'windowSize' must be at least " + std::to_string(kMinWindowSize));
      }
    } else if (key == "nestedFunctions") {
      const auto s = v.is_string() ? v.get<std::string>() : std::string{};
      if (s == "separate") {
        c.analysis.nested = NestedFunctions::Separate;
      } else if (s == "merged") {
        c.analysis.nested = NestedFunctions::Merged;
      } else {
        throw ConfigError("config: 'nestedFunctions' must be \"separate\" or \"merged\"");
      }
    } else if (key == "workers") {
      c.analysis.workers = positive_size(v, key);
    } else if (key == "weighting") {
      if (!v.is_string()) throw ConfigError("config: 'weighting' must be a string");
      c.weighting = parse_weighting(v.get<std::string>());
    } else if (key == "thresholds") {
      if (!v.is_object()) throw ConfigError("config: 'thresholds' must be an object");
      for (const auto& [tk, tv] : v.items()) {
        const auto* field = std::find_if(std::begin(kThresholdFields), std::end(kThresholdFields),
                                         [&](const ThresholdField& f) { return f.key == tk; });
        if (field == std::end(kThresholdFields)) throw ConfigError("config: unknown threshold '" + tk + "'");
        if (!tv.is_number() || tv.get<double>() < 0) {
          throw ConfigError("config: threshold '" + tk + "' must be a non-negative number");
        }
        c.thresholds.*field->member = tv.get<double>();
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ToolConfig& config) { return canonical_json(config).dump(); }

std::string config_digest(const ToolConfig& config) { return sha256_hex(canonical_config(config)); }

}  // namespace quperman
