#include "poiname/stats.hpp"

#include <algorithm>

#include "poiname/error.hpp"

namespace poiname {

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("regression inputs differ in length");
  }
  if (x.size() < 2) {
    throw ComputeError("degenerate regression: need at least two points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw ComputeError("degenerate regression: all x values are equal");
  }
  LinearFit fit;
  fit.points = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // zero-variance response: R^2 is defined as 0
  fit.r_squared = syy == 0.0 ? 0.0 : std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  return fit;
}

}  // namespace poiname
