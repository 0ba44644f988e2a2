#pragma once

// Independent reference implementations. Nothing here calls into the
// library's model code; each oracle recomputes from first principles so a
// shared bug cannot make both sides agree.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtest::oracle {

/// Sort-and-index percentile: 1-based index ceil(p/100 * n).
inline double nearest_rank(std::vector<double> values, int percent) {
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(static_cast<double>(percent) * static_cast<double>(values.size()) / 100.0);
  const auto index = static_cast<std::size_t>(std::max(1.0, rank)) - 1;
  return values[std::min(index, values.size() - 1)];
}

/// Token coverage by any window that occurs at least twice across all
/// streams, by explicit enumeration of every window.
inline std::vector<double> duplication(const std::vector<std::vector<std::string>>& streams, std::size_t w) {
  std::map<std::vector<std::string>, int> seen;
  for (const auto& s : streams) {
    for (std::size_t i = 0; i + w <= s.size(); ++i) {
      ++seen[std::vector<std::string>(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(i + w))];
    }
  }
  std::vector<double> out;
  for (const auto& s : streams) {
    if (s.size() < w) {
      out.push_back(0.0);
      continue;
    }
    std::vector<bool> covered(s.size(), false);
    for (std::size_t i = 0; i + w <= s.size(); ++i) {
      const std::vector<std::string> window(s.begin() + static_cast<long>(i),
                                            s.begin() + static_cast<long>(i + w));
      if (seen[window] >= 2) std::fill(covered.begin() + static_cast<long>(i),
                                       covered.begin() + static_cast<long>(i + w), true);
    }
    const auto n = std::count(covered.begin(), covered.end(), true);
    out.push_back(static_cast<double>(n) / static_cast<double>(s.size()));
  }
  return out;
}

/// Composite Gauss-Legendre (5 nodes) over `panels` equal panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 400) {
  static constexpr double kNodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                       0.9061798459386640};
  static constexpr double kWeights[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                         0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) sum += kWeights[k] * f(mid + 0.5 * h * kNodes[k]);
  }
  return 0.5 * h * sum;
}

/// Benefit curve straight from its definition.
inline double benefit(double h, double eps) {
  const auto logit = [eps](double u) { return std::log((u + eps) / (1.0 - u + eps)); };
  const double u = (h - 1.0) / 9.0;
  return (logit(u) - logit(0.0)) / (logit(1.0) - logit(0.0));
}

/// Central-difference slope of the oracle benefit curve.
inline double benefit_slope_fd(double h, double eps, double step = 1e-6) {
  const double lo = std::max(1.0, h - step);
  const double hi = std::min(10.0, h + step);
  return (benefit(hi, eps) - benefit(lo, eps)) / (hi - lo);
}

struct GridBreakpoints {
  double lower = 0;
  double upper = 0;
};

/// Dense scan for where the slope first drops to k * slope(5.5) (from the
/// left) and last lies below it (towards the right).
inline GridBreakpoints breakpoints_by_scan(double eps, double k, double step = 1e-5) {
  const double target = k * benefit_slope_fd(5.5, eps);
  GridBreakpoints out;
  for (double h = 1.0; h <= 5.5; h += step) {
    if (benefit_slope_fd(h, eps, step) <= target) {
      out.lower = h;
      break;
    }
  }
  for (double h = 10.0; h >= 5.5; h -= step) {
    if (benefit_slope_fd(h, eps, step) <= target) {
      out.upper = h;
      break;
    }
  }
  return out;
}

/// Barrier positions h0 + i*spacing up to 10, enumerated one by one.
inline std::vector<double> barrier_positions(double h0, double spacing) {
  std::vector<double> out;
  for (int i = 1;; ++i) {
    const double x = h0 + i * spacing;
    if (x > 10.0 + 1e-9) break;
    out.push_back(std::min(x, 10.0));
  }
  return out;
}

/// Cost from `from` to `to` by numerical integration, segment by segment.
inline double refactoring_cost(double c0, double gamma, double h0, const std::vector<double>& barriers, double from,
                               double to) {
  double start = h0;
  for (double b : barriers) {
    if (b <= from) start = b;
  }
  double total = 0.0;
  double a = from;
  for (double b : barriers) {
    if (b <= from || b > to) continue;
    const double s = start;
    total += integrate([&](double x) { return c0 * std::pow(gamma, x - s); }, a, b);
    a = b;
    start = b;
  }
  const double s = start;
  total += integrate([&](double x) { return c0 * std::pow(gamma, x - s); }, a, to);
  return total;
}

}  // namespace qtest::oracle
