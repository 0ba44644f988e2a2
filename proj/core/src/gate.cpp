#include "quperman/gate.hpp"

#include <map>

#include "json_util.hpp"
#include "quperman/error.hpp"

namespace quperman {

using detail::Json;

std::string_view to_string(GatePolicy policy) { return policy == GatePolicy::NoDecline ? "noDecline" : "floor"; }

GatePolicy parse_gate_policy(std::string_view text) {
  if (text == "noDecline") return GatePolicy::NoDecline;
  if (text == "floor") return GatePolicy::Floor;
  throw InputError("unknown gate policy '" + std::string(text) + "' (expected noDecline or floor)");
}

GateResult gate_check(const ProjectHealth& before, const ProjectHealth& after, GatePolicy policy,
                      std::optional<double> floorLevel) {
  if (after.files.empty()) throw InputError("gate: the after report has no files");
  if (policy == GatePolicy::NoDecline && before.files.empty()) throw InputError("gate: the before report has no files");
  if (policy == GatePolicy::Floor) {
    if (!floorLevel || !(*floorLevel >= kMinScore && *floorLevel <= kMaxScore)) {
      throw InputError("gate: the floor policy needs a floor level in [1, 10]");
    }
  }

  std::map<std::string_view, double> prior;
  for (const auto& f : before.files) prior.emplace(f.path, f.score);

  GateResult r;
  r.policy = policy;
  r.floorLevel = policy == GatePolicy::Floor ? floorLevel : std::nullopt;

  if (policy == GatePolicy::NoDecline) {
    bool shared = false;
    for (const auto& f : after.files) {
      const auto it = prior.find(f.path);
      if (it == prior.end()) continue;
      shared = true;
      if (f.score < it->second - kGateTolerance) r.violations.push_back({f.path, it->second, f.score});
    }
    if (!shared) throw InputError("gate: the before and after reports share no file path");
    if (after.score < before.score - kGateTolerance) {
      r.violations.push_back({std::string(kProjectPath), before.score, after.score});
    }
  } else {
    for (const auto& f : after.files) {
      if (f.score < *floorLevel) {
        const auto it = prior.find(f.path);
        r.violations.push_back(
            {f.path, it == prior.end() ? std::nullopt : std::optional<double>(it->second), f.score});
      }
    }
    if (after.score < *floorLevel) {
      r.violations.push_back({std::string(kProjectPath),
                              before.files.empty() ? std::nullopt : std::optional<double>(before.score),
                              after.score});
    }
  }
  r.pass = r.violations.empty();
  return r;
}

std::string to_gate_document(const GateResult& result) {
  Json j;
  j["schema"] = "gate.v1";
  j["policy"] = to_string(result.policy);
  j["floorLevel"] = result.floorLevel ? Json(*result.floorLevel) : Json(nullptr);
  j["pass"] = result.pass;
  Json v = Json::array();
  for (const auto& x : result.violations) {
    Json e;
    e["path"] = x.path;
    e["before"] = x.before ? Json(*x.before) : Json(nullptr);
    e["after"] = x.after;
    v.push_back(e);
  }
  j["violations"] = v;
  return detail::dump_document(j);
}

}  // namespace quperman
