#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "poiname/corpus.hpp"

namespace poiname {

struct FrequencyTable {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
};

struct RankedTerm {
  std::string term;
  std::uint64_t frequency = 0;
  std::size_t rank = 0;  // 1-based
};

/// ln f = intercept + slope * ln r
struct LogLogFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Counts every token occurrence across all documents of all regions.
/// Throws InputError("empty corpus") when there are no tokens.
FrequencyTable term_frequencies(const RegionCorpora& corpora);

/// Descending frequency, ties broken by term in byte order.
std::vector<RankedTerm> rank_terms(const FrequencyTable& table);

/// OLS of ln(frequency) on ln(rank), natural log.
/// Throws ComputeError("degenerate regression") with fewer than two ranks.
LogLogFit fit_zipf(std::span<const RankedTerm> ranked);

/// Same fit on real-valued ranks and frequencies, all of which must be positive.
LogLogFit fit_rank_frequency(std::span<const double> ranks, std::span<const double> frequencies);

}  // namespace poiname
