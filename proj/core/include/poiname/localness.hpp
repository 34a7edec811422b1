#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poiname/corpus.hpp"

namespace poiname {

/// pure:     w = tf * ln(|G| / |G_j|)        (zero for terms found everywhere)
/// plus_one: w = tf * (ln(|G| / |G_j|) + 1)
enum class IdfVariant { pure, plus_one };

std::string_view to_string(IdfVariant variant);
/// Accepts "pure", "plus-one" and "plus_one".
IdfVariant parse_idf_variant(std::string_view text);

enum class LogBase { natural, base2 };

std::string_view to_string(LogBase base);
LogBase parse_log_base(std::string_view text);

/// Region x term weights where each region plays the role of a document.
class GeoTfidfTable {
 public:
  const std::vector<std::string>& regions() const { return regions_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  IdfVariant variant() const { return variant_; }
  std::size_t region_count() const { return regions_.size(); }

  std::optional<std::size_t> region_index(std::string_view region) const;

  /// Number of regions whose documents contain the term.
  std::uint32_t document_frequency(std::size_t term) const { return doc_freq_[term]; }
  std::uint64_t term_frequency(std::size_t region, std::size_t term) const {
    return tf_[region * vocabulary_.size() + term];
  }
  double weight(std::size_t region, std::size_t term) const {
    return weights_[region * vocabulary_.size() + term];
  }
  std::span<const double> row(std::size_t region) const {
    return {weights_.data() + region * vocabulary_.size(), vocabulary_.size()};
  }

 private:
  friend GeoTfidfTable geo_tfidf(const RegionCorpora&, IdfVariant);

  std::vector<std::string> regions_;
  Vocabulary vocabulary_;
  IdfVariant variant_ = IdfVariant::pure;
  std::vector<std::uint32_t> doc_freq_;
  std::vector<std::uint64_t> tf_;
  std::vector<double> weights_;
};

/// tf is the raw token count of the term in the region's documents, so pass
/// deduplicated corpora to get the local-term weighting.
/// Throws InputError with fewer than two regions.
GeoTfidfTable geo_tfidf(const RegionCorpora& corpora, IdfVariant variant = IdfVariant::pure);

struct WeightedTerm {
  std::string term;
  double weight = 0.0;
};

struct LocalTermSet {
  std::string region;
  std::vector<WeightedTerm> terms;  // descending weight, ties by term
};

/// The k highest-weight terms per region. Zero-weight terms never qualify,
/// so a region can get fewer than k.
std::map<std::string, LocalTermSet> top_local_terms(const GeoTfidfTable& table, std::size_t k);

struct UsageCell {
  std::size_t local = 0;  // |LP_ij|: names containing any local term
  std::size_t total = 0;  // |P_ij|

  bool defined() const { return total > 0; }
  double percentage() const {
    return static_cast<double>(local) / static_cast<double>(total);
  }
};

/// Regions as rows, categories as columns, both sorted.
class UsageMatrix {
 public:
  UsageMatrix() = default;
  UsageMatrix(std::vector<std::string> regions, std::vector<std::string> categories);

  const std::vector<std::string>& regions() const { return regions_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const UsageCell& at(std::size_t region, std::size_t category) const {
    return cells_[region * categories_.size() + category];
  }
  UsageCell& at(std::size_t region, std::size_t category) {
    return cells_[region * categories_.size() + category];
  }

 private:
  std::vector<std::string> regions_;
  std::vector<std::string> categories_;
  std::vector<UsageCell> cells_;
};

/// A name counts as local when one of its tokens equals one of its region's
/// local terms (token equality, not substring).
/// Throws InputError when a subset's region has no LocalTermSet.
UsageMatrix usage_percentages(std::span<const TypedSubset> subsets,
                              const std::map<std::string, LocalTermSet>& local_terms);

struct UsageDistribution {
  std::string region;
  std::vector<std::string> categories;
  std::vector<double> probabilities;
};

/// Divides by the sum. Throws ComputeError("cannot normalize zero vector").
std::vector<double> normalize_distribution(std::span<const double> row);

/// One normalized distribution per region. Categories that are undefined
/// (no POIs) in any region are dropped from all rows so every distribution
/// shares the same support.
std::vector<UsageDistribution> usage_distributions(const UsageMatrix& matrix);

/// Sum of P(i) ln(P(i)/Q(i)), with 0 ln(0/q) = 0.
/// Throws ComputeError("infinite divergence") if P(i) > 0 where Q(i) = 0.
double kld(std::span<const double> p, std::span<const double> q, LogBase base = LogBase::natural);

/// Jensen-Shannon divergence against the mixture M = (P + Q) / 2.
/// Lies in [0, ln 2] for natural log and [0, 1] for base 2.
double jsd(std::span<const double> p, std::span<const double> q, LogBase base = LogBase::natural);

struct PairwiseJsd {
  double mean = 0.0;
  std::size_t pairs = 0;
};

/// Mean over all unordered pairs, n(n-1)/2 of them.
PairwiseJsd mean_pairwise_jsd(std::span<const UsageDistribution> distributions,
                              LogBase base = LogBase::natural);

}  // namespace poiname
