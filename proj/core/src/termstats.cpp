#include "poiname/termstats.hpp"

#include <algorithm>
#include <cmath>

#include "poiname/error.hpp"
#include "poiname/stats.hpp"

namespace poiname {

FrequencyTable term_frequencies(const RegionCorpora& corpora) {
  FrequencyTable table;
  for (const auto& [region, corpus] : corpora) {
    for (const auto& doc : corpus.documents) {
      for (const auto& token : doc.tokens) {
        ++table.counts[token];
        ++table.total;
      }
    }
  }
  if (table.total == 0) throw InputError("empty corpus");
  return table;
}

std::vector<RankedTerm> rank_terms(const FrequencyTable& table) {
  std::vector<RankedTerm> ranked;
  ranked.reserve(table.counts.size());
  for (const auto& [term, count] : table.counts) ranked.push_back({term, count, 0});
  // counts is already in term order, so a stable sort keeps ties lexicographic
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedTerm& a, const RankedTerm& b) { return a.frequency > b.frequency; });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

LogLogFit fit_zipf(std::span<const RankedTerm> ranked) {
  std::vector<double> ranks;
  std::vector<double> freqs;
  ranks.reserve(ranked.size());
  freqs.reserve(ranked.size());
  for (const auto& entry : ranked) {
    if (entry.frequency < 1 || entry.rank < 1) {
      throw InputError("term '" + entry.term + "' has a zero rank or frequency");
    }
    ranks.push_back(static_cast<double>(entry.rank));
    freqs.push_back(static_cast<double>(entry.frequency));
  }
  return fit_rank_frequency(ranks, freqs);
}

LogLogFit fit_rank_frequency(std::span<const double> ranks, std::span<const double> frequencies) {
  if (ranks.size() != frequencies.size()) throw InputError("rank and frequency counts differ");
  if (ranks.size() < 2) throw ComputeError("degenerate regression: need at least two ranks");
  std::vector<double> log_rank;
  std::vector<double> log_freq;
  log_rank.reserve(ranks.size());
  log_freq.reserve(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (!(ranks[i] > 0.0) || !(frequencies[i] > 0.0)) {
      throw InputError("ranks and frequencies must be positive");
    }
    log_rank.push_back(std::log(ranks[i]));
    log_freq.push_back(std::log(frequencies[i]));
  }
  const auto fit = least_squares(log_rank, log_freq);
  return {fit.intercept, fit.slope, fit.r_squared, fit.points};
}

}  // namespace poiname
