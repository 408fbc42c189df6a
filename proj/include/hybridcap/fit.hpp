#pragma once

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hybridcap {

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
};

class DegenerateFitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ordinary least squares of log T against log n. Needs at least three
// distinct n and positive T.
inline SlopeFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
  std::set<double> distinct;
  for (const auto& [n, t] : points) {
    if (!(n > 0) || !(t > 0)) throw DegenerateFitError("n and T must be positive to fit in log-log");
    distinct.insert(n);
  }
  if (distinct.size() < 3) throw DegenerateFitError("need at least three distinct n");

  const double k = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [n, t] : points) {
    mx += std::log(n);
    my += std::log(t);
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (const auto& [n, t] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(t) - my);
  }
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (const auto& [n, t] : points) {
    const double e = std::log(t) - (f.intercept + f.slope * std::log(n));
    sse += e * e;
  }
  f.stderr_slope = k > 2 ? std::sqrt(sse / (k - 2) / sxx) : 0.0;
  return f;
}

}  // namespace hybridcap
