#include "quperman/benefit.hpp"

#include <cmath>
#include <string>

#include "quperman/error.hpp"

namespace quperman {

namespace {


// L(1) - L(0) = 2 ln((1 + eps) / eps)
double span(double eps) { return 2.0 * std::log((1.0 + eps) / eps); }

double slope_unchecked(double eps, double h) {
  const double u = (h - kHealthMin) / (kHealthMax - kHealthMin);
  const double dL = 1.0 / (u + eps) + 1.0 / (1.0 - u + eps);
  return dL / ((kHealthMax - kHealthMin) * span(eps));
}

// Root of slope(h) = target on [lo, hi] where slope - target changes sign.
double bisect(double eps, double target, double lo, double hi) {
  double flo = slope_unchecked(eps, lo) - target;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = slope_unchecked(eps, mid) - target;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_domain(double h) {
  if (!(h >= kHealthMin && h <= kHealthMax)) {
    throw DomainError("health " + std::to_string(h) + " lies outside [1, 10]");
  }
}

}  // namespace

void validate(const BenefitCurve& curve) {
  if (!(curve.epsilon > 0) || !std::isfinite(curve.epsilon)) throw ParameterError("benefit epsilon must be > 0");
  if (!(curve.kSlope > 1) || !std::isfinite(curve.kSlope)) {
    throw ParameterError("kSlope must exceed 1: the mid-scale slope is the curve's minimum");
  }
}

double benefit_value(const BenefitCurve& curve, double health) {
  check_domain(health);
  const double eps = curve.epsilon;
  const double u = (health - kHealthMin) / (kHealthMax - kHealthMin);
  // L(u) - L(0) split so both endpoints come out exact: 0 at u = 0 and
  // span(eps) at u = 1.
  const double rise = std::log((u + eps) / eps) + std::log((1.0 + eps) / (1.0 - u + eps));
  return rise / span(eps);
}

double benefit_slope(const BenefitCurve& curve, double health) {
  check_domain(health);
  return slope_unchecked(curve.epsilon, health);
}

double max_slope_ratio(const BenefitCurve& curve) {
  return slope_unchecked(curve.epsilon, kHealthMin) / slope_unchecked(curve.epsilon, kHealthMid);
}

Breakpoints derive_breakpoints(const BenefitCurve& curve) {
  validate(curve);
  const double limit = max_slope_ratio(curve);
  if (curve.kSlope >= limit) {
    throw ParameterError("kSlope " + std::to_string(curve.kSlope) + " is not below the end-of-scale slope ratio " +
                         std::to_string(limit) + "; no breakpoint exists");
  }
  const double target = curve.kSlope * slope_unchecked(curve.epsilon, kHealthMid);
  return {bisect(curve.epsilon, target, kHealthMin, kHealthMid),
          bisect(curve.epsilon, target, kHealthMid, kHealthMax)};
}

}  // namespace quperman
