#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poiname/corpus.hpp"
#include "poiname/random.hpp"

namespace poiname {

struct EmbeddingConfig {
  std::size_t dimension = 300;
  std::size_t negatives = 5;
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  std::size_t epochs = 20;
  std::uint64_t seed = 1;
  double noise_power = 0.75;
  /// 1 gives bit-reproducible training. More threads run lock-free updates
  /// over disjoint shards of each epoch and are not reproducible.
  std::size_t threads = 1;

  /// Throws InputError describing the first invalid field.
  void validate() const;
};

/// Numerically stable logistic function.
double sigmoid(double x);

/// -ln σ(x), computed without overflow.
double neg_log_sigmoid(double x);

struct TrainingPair {
  std::uint32_t region = 0;  // index into TrainingSet::regions
  std::uint32_t word = 0;    // index into the vocabulary
};

struct TrainingSet {
  std::vector<std::string> regions;
  Vocabulary vocabulary;
  std::vector<TrainingPair> pairs;  // region order, then document order, then token order
};

/// One pair per token occurrence. Duplicate names are kept.
/// Throws InputError("empty corpus") when no region has tokens.
TrainingSet build_training_pairs(const RegionCorpora& corpora);

/// Negative-sampling noise: unigram counts raised to `power`, renormalized
/// over the words a region never uses. When a region uses the whole
/// vocabulary it falls back to the full vocabulary minus the positive word.
class NoiseModel {
 public:
  NoiseModel(const TrainingSet& training, double power);

  std::size_t region_count() const { return region_cdfs_.size(); }

  /// Regions that use every vocabulary term and therefore sample from the
  /// fallback distribution.
  const std::vector<std::uint32_t>& fallback_regions() const { return fallback_regions_; }

  /// Probability of drawing `word` as a negative for `region`, excluding the
  /// fallback's rejection of the positive word.
  double probability(std::uint32_t region, std::uint32_t word) const;

  /// K draws with replacement; none equals `positive`.
  /// Throws ComputeError when the vocabulary has a single term.
  void sample(std::uint32_t region, std::uint32_t positive, std::size_t k, Rng& rng,
              std::vector<std::uint32_t>& out) const;

  std::vector<std::uint32_t> sample(std::uint32_t region, std::uint32_t positive, std::size_t k,
                                    Rng& rng) const;

 private:
  struct Table {
    std::vector<std::uint32_t> words;
    std::vector<double> cdf;  // inclusive cumulative probability
  };
  std::uint32_t draw(const Table& table, Rng& rng) const;

  std::vector<Table> region_cdfs_;
  Table full_;
  std::vector<std::uint32_t> fallback_regions_;
  std::size_t vocab_size_ = 0;
};

/// J = -ln σ(w_o·r) - Σ_k ln σ(-w_k·r)
double pair_loss(std::span<const double> region, std::span<const double> positive,
                 std::span<const std::span<const double>> negatives);

struct PairGradients {
  std::vector<double> region;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};

/// Exact partial derivatives of pair_loss with respect to each vector.
PairGradients pair_gradients(std::span<const double> region, std::span<const double> positive,
                             std::span<const std::span<const double>> negatives);

/// Dense row-major block of equally sized vectors.
class VectorTable {
 public:
  VectorTable() = default;
  VectorTable(std::size_t rows, std::size_t dimension)
      : dimension_(dimension), values_(rows * dimension) {}

  std::size_t rows() const { return dimension_ == 0 ? 0 : values_.size() / dimension_; }
  std::size_t dimension() const { return dimension_; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * dimension_, dimension_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<double> values_;
};

struct EmbeddingModel {
  std::vector<std::string> regions;
  std::vector<std::string> words;
  VectorTable region_vectors;
  VectorTable word_vectors;
  EmbeddingConfig config;
  std::vector<double> epoch_losses;  // mean pair loss per epoch
  double final_loss = 0.0;
  std::vector<std::string> warnings;

  std::span<const double> region_vector(std::string_view region) const;
};

/// SGD over the shuffled pairs with a linearly decaying learning rate.
/// Throws ComputeError when the loss turns non-finite.
EmbeddingModel train(const TrainingSet& training, const EmbeddingConfig& config);

/// Text format. Header: `dimension vocab_size region_count seed variant`,
/// then one line per region vector and one per word vector: an escaped
/// identifier followed by `dimension` values with 17 significant digits.
void save_model(std::ostream& out, const EmbeddingModel& model);
void save_model(const std::filesystem::path& path, const EmbeddingModel& model);

/// Reads what save_model wrote; values round-trip bit-exactly. Training
/// metadata other than seed and dimension is not stored.
EmbeddingModel load_model(std::istream& in);
EmbeddingModel load_model(const std::filesystem::path& path);

inline constexpr std::string_view kEmbeddingVariant = "region-sgns";

}  // namespace poiname
