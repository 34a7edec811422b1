#include "poiname/localness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "poiname/error.hpp"

namespace poiname {
namespace {

constexpr double kSumTolerance = 1e-9;

void check_distribution(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError(std::string(name) + " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InputError(std::string(name) + " does not sum to 1");
  }
}

double log_scale(LogBase base) { return base == LogBase::base2 ? std::numbers::ln2 : 1.0; }

double kld_unchecked(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw ComputeError("infinite divergence");
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

}  // namespace

std::string_view to_string(IdfVariant variant) {
  return variant == IdfVariant::pure ? "pure" : "plus-one";
}

IdfVariant parse_idf_variant(std::string_view text) {
  if (text == "pure") return IdfVariant::pure;
  if (text == "plus-one" || text == "plus_one") return IdfVariant::plus_one;
  throw InputError("unknown IDF variant '" + std::string(text) + "' (expected pure or plus-one)");
}

std::string_view to_string(LogBase base) { return base == LogBase::natural ? "e" : "2"; }

LogBase parse_log_base(std::string_view text) {
  if (text == "e" || text == "natural") return LogBase::natural;
  if (text == "2" || text == "base2") return LogBase::base2;
  throw InputError("unknown log base '" + std::string(text) + "' (expected e or 2)");
}

std::optional<std::size_t> GeoTfidfTable::region_index(std::string_view region) const {
  const auto it = std::lower_bound(regions_.begin(), regions_.end(), region);
  if (it == regions_.end() || *it != region) return std::nullopt;
  return static_cast<std::size_t>(it - regions_.begin());
}

GeoTfidfTable geo_tfidf(const RegionCorpora& corpora, IdfVariant variant) {
  if (corpora.size() < 2) {
    throw InputError("geographic TF-IDF needs at least two regions");
  }
  GeoTfidfTable table;
  table.variant_ = variant;
  table.vocabulary_ = build_vocabulary(corpora);
  const std::size_t terms = table.vocabulary_.size();
  for (const auto& [region, corpus] : corpora) table.regions_.push_back(region);

  table.tf_.assign(table.regions_.size() * terms, 0);
  std::size_t row = 0;
  for (const auto& [region, corpus] : corpora) {
    auto* counts = table.tf_.data() + row * terms;
    for (const auto& doc : corpus.documents) {
      for (const auto& token : doc.tokens) ++counts[*table.vocabulary_.index_of(token)];
    }
    ++row;
  }

  table.doc_freq_.assign(terms, 0);
  for (std::size_t r = 0; r < table.regions_.size(); ++r) {
    for (std::size_t j = 0; j < terms; ++j) {
      if (table.tf_[r * terms + j] > 0) ++table.doc_freq_[j];
    }
  }

  const auto regions = static_cast<double>(table.regions_.size());
  std::vector<double> idf(terms);
  for (std::size_t j = 0; j < terms; ++j) {
    idf[j] = std::log(regions / static_cast<double>(table.doc_freq_[j]));
    if (variant == IdfVariant::plus_one) idf[j] += 1.0;
  }
  table.weights_.resize(table.tf_.size());
  for (std::size_t r = 0; r < table.regions_.size(); ++r) {
    for (std::size_t j = 0; j < terms; ++j) {
      table.weights_[r * terms + j] = static_cast<double>(table.tf_[r * terms + j]) * idf[j];
    }
  }
  return table;
}

std::map<std::string, LocalTermSet> top_local_terms(const GeoTfidfTable& table, std::size_t k) {
  if (k < 1) throw InputError("k must be at least 1");
  std::map<std::string, LocalTermSet> out;
  const auto& vocab = table.vocabulary();
  for (std::size_t r = 0; r < table.region_count(); ++r) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      if (table.weight(r, j) > 0.0) candidates.push_back(j);
    }
    // vocabulary indices follow term order, so index breaks weight ties lexicographically
    const auto keep = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), [&](std::size_t a, std::size_t b) {
                        const double wa = table.weight(r, a);
                        const double wb = table.weight(r, b);
                        return wa != wb ? wa > wb : a < b;
                      });
    LocalTermSet set{table.regions()[r], {}};
    for (std::size_t i = 0; i < keep; ++i) {
      set.terms.push_back({vocab.term(candidates[i]), table.weight(r, candidates[i])});
    }
    out.emplace(table.regions()[r], std::move(set));
  }
  return out;
}

UsageMatrix::UsageMatrix(std::vector<std::string> regions, std::vector<std::string> categories)
    : regions_(std::move(regions)),
      categories_(std::move(categories)),
      cells_(regions_.size() * categories_.size()) {}

UsageMatrix usage_percentages(std::span<const TypedSubset> subsets,
                              const std::map<std::string, LocalTermSet>& local_terms) {
  std::set<std::string> regions;
  std::set<std::string> categories;
  for (const auto& s : subsets) {
    regions.insert(s.region);
    categories.insert(s.category);
  }
  UsageMatrix matrix({regions.begin(), regions.end()}, {categories.begin(), categories.end()});

  std::map<std::string, std::set<std::string, std::less<>>> lookup;
  for (const auto& region : regions) {
    const auto it = local_terms.find(region);
    if (it == local_terms.end()) {
      throw InputError("no local terms for region '" + region + "'");
    }
    auto& terms = lookup[region];
    for (const auto& t : it->second.terms) terms.insert(t.term);
  }

  for (const auto& s : subsets) {
    const auto r = static_cast<std::size_t>(
        std::distance(regions.begin(), regions.find(s.region)));
    const auto c = static_cast<std::size_t>(
        std::distance(categories.begin(), categories.find(s.category)));
    const auto& terms = lookup.at(s.region);
    auto& cell = matrix.at(r, c);
    for (const auto& doc : s.documents) {
      ++cell.total;
      const bool local = std::any_of(doc.tokens.begin(), doc.tokens.end(),
                                     [&](const std::string& t) { return terms.contains(t); });
      if (local) ++cell.local;
    }
  }
  return matrix;
}

std::vector<double> normalize_distribution(std::span<const double> row) {
  double sum = 0.0;
  for (double v : row) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError("distribution entries must be finite and nonnegative");
    }
    sum += v;
  }
  if (sum == 0.0) throw ComputeError("cannot normalize zero vector");
  std::vector<double> out(row.begin(), row.end());
  for (auto& v : out) v /= sum;
  return out;
}

std::vector<UsageDistribution> usage_distributions(const UsageMatrix& matrix) {
  std::vector<std::size_t> columns;
  for (std::size_t c = 0; c < matrix.categories().size(); ++c) {
    bool defined = true;
    for (std::size_t r = 0; r < matrix.regions().size(); ++r) {
      defined = defined && matrix.at(r, c).defined();
    }
    if (defined) columns.push_back(c);
  }
  std::vector<UsageDistribution> out;
  for (std::size_t r = 0; r < matrix.regions().size(); ++r) {
    UsageDistribution dist;
    dist.region = matrix.regions()[r];
    std::vector<double> row;
    for (const auto c : columns) {
      dist.categories.push_back(matrix.categories()[c]);
      row.push_back(matrix.at(r, c).percentage());
    }
    dist.probabilities = normalize_distribution(row);
    out.push_back(std::move(dist));
  }
  return out;
}

double kld(std::span<const double> p, std::span<const double> q, LogBase base) {
  if (p.size() != q.size()) throw InputError("distributions differ in support size");
  check_distribution(p, "P");
  return kld_unchecked(p, q) / log_scale(base);
}

double jsd(std::span<const double> p, std::span<const double> q, LogBase base) {
  if (p.size() != q.size()) throw InputError("distributions differ in support size");
  check_distribution(p, "P");
  check_distribution(q, "Q");
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  const double value = 0.5 * kld_unchecked(p, m) + 0.5 * kld_unchecked(q, m);
  // rounding can leave the sum an ulp outside the true range
  return std::clamp(value, 0.0, std::numbers::ln2) / log_scale(base);
}

PairwiseJsd mean_pairwise_jsd(std::span<const UsageDistribution> distributions, LogBase base) {
  if (distributions.size() < 2) throw InputError("pairwise JSD needs at least two distributions");
  PairwiseJsd result;
  double sum = 0.0;
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    for (std::size_t j = i + 1; j < distributions.size(); ++j) {
      if (distributions[i].categories != distributions[j].categories) {
        throw InputError("distributions for '" + distributions[i].region + "' and '" +
                         distributions[j].region + "' have different categories");
      }
      sum += jsd(distributions[i].probabilities, distributions[j].probabilities, base);
      ++result.pairs;
    }
  }
  result.mean = sum / static_cast<double>(result.pairs);
  return result;
}

}  // namespace poiname
