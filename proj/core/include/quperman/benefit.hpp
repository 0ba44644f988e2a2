#pragma once

namespace quperman {

/// Normalised, epsilon-regularised logit over the health scale [1, 10]:
///
///   u = (h - 1) / 9,  L(u) = ln((u + eps) / (1 - u + eps)),
///   B(h) = (L(u) - L(0)) / (L(1) - L(0))
///
/// B is steep near both ends of the scale and close to linear in between.
struct BenefitCurve {
  double epsilon = 0.05;
  /// Breakpoints sit where the slope reaches kSlope times the mid-scale slope.
  double kSlope = 1.5;

  bool operator==(const BenefitCurve&) const = default;
};

struct Breakpoints {
  double costSpiralTrigger = 0;   ///< lower breakpoint
  double valueCascadePoint = 0;   ///< upper breakpoint
};

inline constexpr double kHealthMin = 1.0;
inline constexpr double kHealthMax = 10.0;
inline constexpr double kHealthMid = 5.5;

/// Throws ParameterError for epsilon <= 0 or kSlope <= 1.
void validate(const BenefitCurve& curve);

/// B(h) in [0, 1]. Throws DomainError outside [1, 10].
double benefit_value(const BenefitCurve& curve, double health);

/// Analytic dB/dh.
double benefit_slope(const BenefitCurve& curve, double health);

/// Bisection on each half of the scale. Throws ParameterError when
/// kSlope <= 1 or when kSlope exceeds the end-of-scale slope ratio (no
/// crossing exists).
Breakpoints derive_breakpoints(const BenefitCurve& curve);

/// Largest kSlope for which breakpoints exist: slope(1) / slope(5.5).
double max_slope_ratio(const BenefitCurve& curve);

}  // namespace quperman
