#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quperman/health.hpp"

namespace quperman {

enum class GatePolicy {
  NoDecline,  ///< no file, and not the project, may lose score
  Floor,      ///< every file and the project must stay at or above a level
};

std::string_view to_string(GatePolicy policy);
GatePolicy parse_gate_policy(std::string_view text);

inline constexpr std::string_view kProjectPath = "<project>";
inline constexpr double kGateTolerance = 1e-9;

struct GateViolation {
  std::string path;  ///< kProjectPath for the project-level score
  std::optional<double> before;
  double after = 0;

  bool operator==(const GateViolation&) const = default;
};

struct GateResult {
  GatePolicy policy = GatePolicy::NoDecline;
  std::optional<double> floorLevel;
  bool pass = true;
  std::vector<GateViolation> violations;
};

/// Throws InputError when either side has no files, when the two sides
/// share no path under noDecline, or when the floor policy lacks a level in [1, 10].
GateResult gate_check(const ProjectHealth& before, const ProjectHealth& after, GatePolicy policy,
                      std::optional<double> floorLevel = std::nullopt);

std::string to_gate_document(const GateResult& result);

}  // namespace quperman
