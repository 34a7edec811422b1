#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poiname/geo.hpp"
#include "poiname/regionvec.hpp"

namespace poiname {

struct PairObservation {
  std::string region_a;
  std::string region_b;
  double similarity = 0.0;
  double distance = 0.0;  // meters
};

/// One observation per unordered pair, ordered by (region_a, region_b) with
/// region_a < region_b. Throws InputError when the region sets differ.
std::vector<PairObservation> pair_observations(const SimilarityMatrix& similarity,
                                               const DistanceMatrix& distance);

enum class CorrelationMethod { pearson, spearman };
enum class PValueMethod { permutation, t_approx };

std::string_view to_string(CorrelationMethod method);
std::string_view to_string(PValueMethod method);
/// Accepts "permutation" and "t" / "t_approx" / "t-approx".
PValueMethod parse_p_method(std::string_view text);

struct PValueOptions {
  PValueMethod method = PValueMethod::permutation;
  std::size_t permutations = 100000;
  std::uint64_t seed = 0;
};

struct CorrelationResult {
  double coefficient = 0.0;
  double p_value = 1.0;  // two-sided
  CorrelationMethod method = CorrelationMethod::pearson;
  PValueMethod p_method = PValueMethod::permutation;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Sample Pearson correlation. Needs n >= 3 and nonzero variance in both
/// inputs, else ComputeError("degenerate correlation").
CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                          const PValueOptions& options = {});

/// Pearson correlation of average ranks.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           const PValueOptions& options = {});

/// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// ln s = intercept + slope * ln d, i.e. s = exp(intercept) * d^slope.
struct DecayFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;

  double scale() const;  // exp(intercept)
};

/// Throws InputError listing every pair with s <= 0 or d <= 0, and
/// InputError when fewer than three observations are given.
DecayFit fit_distance_decay(std::span<const PairObservation> observations);

}  // namespace poiname
