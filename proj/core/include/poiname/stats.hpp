#pragma once

#include <cstddef>
#include <span>

namespace poiname {

/// Ordinary least-squares line y = intercept + slope * x.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;  // 0 when y has zero variance
  std::size_t points = 0;
};

/// Two-pass OLS. Throws ComputeError("degenerate regression") with fewer
/// than two points or when every x is identical.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

}  // namespace poiname
