#pragma once

#include <span>
#include <utility>

namespace qclab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log x, log y). Needs at least two points, all
/// coordinates positive. A perfect fit (including constant y) reports r^2 = 1.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

}  // namespace qclab
