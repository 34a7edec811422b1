#include "poiname/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "poiname/error.hpp"
#include "poiname/random.hpp"
#include "poiname/stats.hpp"

namespace poiname {
namespace {

// |r_perm| >= |r_obs| is tested with this slack so that permutations giving
// the same statistic up to rounding are counted.
constexpr double kTieSlack = 1e-12;

struct Centered {
  std::vector<double> values;
  double sum_sq = 0.0;
};

Centered center(std::span<const double> v) {
  Centered c;
  const double m = mean(v);
  c.values.reserve(v.size());
  for (double x : v) {
    c.values.push_back(x - m);
    c.sum_sq += (x - m) * (x - m);
  }
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("correlation inputs differ in length");
  if (x.size() < 3) throw InputError("correlation needs at least three observations");
}

double permutation_p(const Centered& cx, Centered cy, double observed, const PValueOptions& options) {
  if (options.permutations == 0) throw InputError("permutation count must be positive");
  Rng rng(options.seed);
  const double denom = std::sqrt(cx.sum_sq) * std::sqrt(cy.sum_sq);
  const double threshold = std::abs(observed) - kTieSlack;
  std::size_t extreme = 0;
  for (std::size_t b = 0; b < options.permutations; ++b) {
    shuffle(cy.values.begin(), cy.values.end(), rng);
    if (std::abs(dot(cx.values, cy.values) / denom) >= threshold) ++extreme;
  }
  return static_cast<double>(extreme + 1) / static_cast<double>(options.permutations + 1);
}

double t_approx_p(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  if (std::abs(r) >= 1.0) return std::numeric_limits<double>::min();  // below double resolution
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)),
                    std::numeric_limits<double>::min(), 1.0);
}

CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                            CorrelationMethod method, const PValueOptions& options) {
  const auto cx = center(x);
  auto cy = center(y);
  if (cx.sum_sq == 0.0 || cy.sum_sq == 0.0) {
    throw ComputeError("degenerate correlation: zero variance");
  }
  CorrelationResult result;
  result.method = method;
  result.p_method = options.method;
  result.n = x.size();
  result.seed = options.seed;
  result.coefficient =
      std::clamp(dot(cx.values, cy.values) / (std::sqrt(cx.sum_sq) * std::sqrt(cy.sum_sq)), -1.0, 1.0);
  result.p_value = options.method == PValueMethod::permutation
                       ? permutation_p(cx, std::move(cy), result.coefficient, options)
                       : t_approx_p(result.coefficient, result.n);
  return result;
}

}  // namespace

std::string_view to_string(CorrelationMethod method) {
  return method == CorrelationMethod::pearson ? "pearson" : "spearman";
}

std::string_view to_string(PValueMethod method) {
  return method == PValueMethod::permutation ? "permutation" : "t";
}

PValueMethod parse_p_method(std::string_view text) {
  if (text == "permutation") return PValueMethod::permutation;
  if (text == "t" || text == "t_approx" || text == "t-approx") return PValueMethod::t_approx;
  throw InputError("unknown p-value method '" + std::string(text) + "' (expected permutation or t)");
}

std::vector<PairObservation> pair_observations(const SimilarityMatrix& similarity,
                                               const DistanceMatrix& distance) {
  auto labels = similarity.labels();
  std::sort(labels.begin(), labels.end());
  auto other = distance.labels();
  std::sort(other.begin(), other.end());
  if (labels != other || std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw InputError("similarity and distance matrices cover different regions");
  }
  std::vector<PairObservation> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const auto si = *similarity.index_of(labels[i]);
      const auto sj = *similarity.index_of(labels[j]);
      const auto di = *distance.index_of(labels[i]);
      const auto dj = *distance.index_of(labels[j]);
      out.push_back({labels[i], labels[j], similarity.at(si, sj), distance.at(di, dj)});
    }
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share rank mean(i+1 .. j)
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                          const PValueOptions& options) {
  check_inputs(x, y);
  return correlate(x, y, CorrelationMethod::pearson, options);
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           const PValueOptions& options) {
  check_inputs(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return correlate(rx, ry, CorrelationMethod::spearman, options);
}

double DecayFit::scale() const { return std::exp(intercept); }

DecayFit fit_distance_decay(std::span<const PairObservation> observations) {
  if (observations.size() < 3) throw InputError("decay fit needs at least three observations");
  std::ostringstream bad;
  std::vector<double> log_d;
  std::vector<double> log_s;
  for (const auto& o : observations) {
    if (!(o.similarity > 0.0) || !(o.distance > 0.0)) {
      bad << ' ' << o.region_a << '/' << o.region_b << " (s=" << o.similarity
          << ", d=" << o.distance << ')';
      continue;
    }
    log_d.push_back(std::log(o.distance));
    log_s.push_back(std::log(o.similarity));
  }
  if (!bad.str().empty()) {
    throw InputError("non-positive similarity or distance:" + bad.str());
  }
  const auto fit = least_squares(log_d, log_s);
  return {fit.intercept, fit.slope, fit.r_squared, fit.points};
}

}  // namespace poiname
