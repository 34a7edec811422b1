#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "poiname/error.hpp"
#include "poiname/stats.hpp"
#include "poiname/termstats.hpp"

namespace poiname {
namespace {

std::vector<RankedTerm> from_frequencies(const std::vector<std::uint64_t>& freqs) {
  std::vector<RankedTerm> ranked;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    ranked.push_back({"t" + std::to_string(i), freqs[i], i + 1});
  }
  return ranked;
}

// Normal-equation solution from raw sums in long double, independent of the
// centered two-pass code path under test.
std::pair<long double, long double> normal_equations(const std::vector<double>& x,
                                                     const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<long double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - slope * sx) / n, slope};
}

TEST(TermFrequencies, CountsEveryOccurrence) {
  const auto table = term_frequencies(testing::corpora_from({{"a", {"pizza pizza", "pizza bar"}}}));
  EXPECT_EQ(table.counts, (std::map<std::string, std::uint64_t>{{"bar", 1}, {"pizza", 3}}));
  EXPECT_EQ(table.total, 4u);
}

TEST(TermFrequencies, SingleDocAndEmpty) {
  const auto table = term_frequencies(testing::corpora_from({{"a", {"the"}}}));
  EXPECT_EQ(table.counts.at("the"), 1u);
  EXPECT_THROW(term_frequencies({}), InputError);
}

TEST(RankTerms, TiesBreakLexicographically) {
  FrequencyTable table{{{"a", 3}, {"b", 3}, {"c", 1}}, 7};
  const auto ranked = rank_terms(table);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].term, "a");
  EXPECT_EQ(ranked[1].term, "b");
  EXPECT_EQ(ranked[2].term, "c");
  EXPECT_EQ(ranked[2].rank, 3u);
}

TEST(RankTerms, SmallCases) {
  EXPECT_EQ(rank_terms(FrequencyTable{{{"x", 5}}, 5})[0].rank, 1u);
  const auto ranked = rank_terms(FrequencyTable{{{"p", 1}, {"q", 2}}, 3});
  EXPECT_EQ(ranked[0].term, "q");
  EXPECT_EQ(ranked[0].frequency, 2u);
  EXPECT_EQ(ranked[1].term, "p");
  EXPECT_EQ(ranked[1].rank, 2u);
}

TEST(RankTerms, FrequencyIsNonIncreasingWithRank) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    FrequencyTable table;
    for (int i = 0; i < 60; ++i) {
      const auto c = 1 + gen() % 20;
      table.counts["w" + std::to_string(gen() % 80)] += c;
    }
    const auto ranked = rank_terms(table);
    for (std::size_t i = 0; i + 1 < ranked.size(); ++i) {
      ASSERT_GE(ranked[i].frequency, ranked[i + 1].frequency);
      ASSERT_EQ(ranked[i].rank + 1, ranked[i + 1].rank);
    }
  }
}

TEST(FitZipf, ExactPowerLaw) {
  std::vector<double> r, f;
  for (int i = 1; i <= 100; ++i) {
    r.push_back(i);
    f.push_back(1000.0 / i);
  }
  const auto fit = fit_rank_frequency(r, f);
  EXPECT_NEAR(fit.slope, -1.0, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log(1000.0), 1e-9);
}

TEST(FitZipf, IntegerPowerLaw) {
  // f = 2^20 / r for r = 2^k is an integer power law
  std::vector<RankedTerm> ranked;
  for (int k = 0; k <= 10; ++k) {
    ranked.push_back({"t" + std::to_string(k), 1u << (20 - k), static_cast<std::size_t>(1) << k});
  }
  const auto fit = fit_zipf(ranked);
  EXPECT_NEAR(fit.slope, -1.0, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
}

TEST(FitZipf, ConstantFrequencyHasZeroSlopeAndR2) {
  const auto fit = fit_zipf(from_frequencies({5, 5, 5, 5, 5}));
  EXPECT_EQ(fit.slope, 0.0);
  EXPECT_EQ(fit.r_squared, 0.0);
}

TEST(FitZipf, DegenerateRegression) {
  EXPECT_THROW(fit_zipf(from_frequencies({7})), ComputeError);
  EXPECT_THROW(fit_zipf(from_frequencies({})), ComputeError);
}

TEST(FitZipf, ScalingFrequenciesOnlyMovesIntercept) {
  std::mt19937 gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::uint64_t> f;
    std::uint64_t v = 5000;
    for (int i = 0; i < 40; ++i) {
      const std::uint64_t step = gen() % 200;
      v = v > step ? v - step : 1;
      f.push_back(v);
    }
    std::vector<std::uint64_t> scaled;
    for (auto x : f) scaled.push_back(x * 7);
    const auto a = fit_zipf(from_frequencies(f));
    const auto b = fit_zipf(from_frequencies(scaled));
    EXPECT_NEAR(a.slope, b.slope, 1e-12);
    EXPECT_NEAR(a.r_squared, b.r_squared, 1e-12);
    EXPECT_NEAR(b.intercept - a.intercept, std::log(7.0), 1e-9);
  }
}

TEST(FitZipf, MatchesNormalEquationOracle) {
  std::mt19937 gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 2 + gen() % 9;  // <= 10 points
    std::vector<std::uint64_t> f;
    for (unsigned i = 0; i < n; ++i) f.push_back(1 + gen() % 1000);
    std::sort(f.rbegin(), f.rend());
    const auto fit = fit_zipf(from_frequencies(f));
    std::vector<double> x, y;
    for (unsigned i = 0; i < n; ++i) {
      x.push_back(std::log(i + 1.0));
      y.push_back(std::log(static_cast<double>(f[i])));
    }
    const auto [intercept, slope] = normal_equations(x, y);
    EXPECT_NEAR(fit.slope, static_cast<double>(slope), 1e-12 * std::max(1.0L, std::abs(slope)));
    EXPECT_NEAR(fit.intercept, static_cast<double>(intercept),
                1e-12 * std::max(1.0L, std::abs(intercept)));
    EXPECT_GE(fit.r_squared, 0.0);
    EXPECT_LE(fit.r_squared, 1.0);
  }
}

}  // namespace
}  // namespace poiname
