#include "poiname/embed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "poiname/error.hpp"
#include "poiname/io.hpp"

namespace poiname {

void EmbeddingConfig::validate() const {
  if (dimension < 1) throw InputError("embedding dimension must be at least 1");
  if (negatives < 1) throw InputError("negative sample count must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InputError("learning rate must be positive");
  }
  if (!(min_learning_rate >= 0.0) || min_learning_rate > learning_rate) {
    throw InputError("minimum learning rate must lie in [0, learning_rate]");
  }
  if (epochs < 1) throw InputError("epochs must be at least 1");
  if (!std::isfinite(noise_power)) throw InputError("noise power must be finite");
  if (threads < 1) throw InputError("threads must be at least 1");
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double neg_log_sigmoid(double x) {
  if (x >= 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

TrainingSet build_training_pairs(const RegionCorpora& corpora) {
  TrainingSet set;
  set.vocabulary = build_vocabulary(corpora);
  for (const auto& [region, corpus] : corpora) {
    const auto r = static_cast<std::uint32_t>(set.regions.size());
    set.regions.push_back(region);
    for (const auto& doc : corpus.documents) {
      for (const auto& token : doc.tokens) {
        set.pairs.push_back({r, static_cast<std::uint32_t>(*set.vocabulary.index_of(token))});
      }
    }
  }
  return set;
}

NoiseModel::NoiseModel(const TrainingSet& training, double power)
    : vocab_size_(training.vocabulary.size()) {
  std::vector<double> counts(vocab_size_, 0.0);
  std::vector<std::vector<bool>> used(training.regions.size(), std::vector<bool>(vocab_size_));
  for (const auto& pair : training.pairs) {
    counts[pair.word] += 1.0;
    used[pair.region][pair.word] = true;
  }
  std::vector<double> weights(vocab_size_);
  for (std::size_t w = 0; w < vocab_size_; ++w) {
    weights[w] = counts[w] > 0.0 ? std::pow(counts[w], power) : 0.0;
  }

  auto build = [&](const std::vector<bool>* exclude) {
    Table table;
    double total = 0.0;
    for (std::size_t w = 0; w < vocab_size_; ++w) {
      if ((exclude && (*exclude)[w]) || weights[w] == 0.0) continue;
      total += weights[w];
      table.words.push_back(static_cast<std::uint32_t>(w));
      table.cdf.push_back(total);
    }
    for (auto& c : table.cdf) c /= total;
    return table;
  };

  full_ = build(nullptr);
  region_cdfs_.reserve(training.regions.size());
  for (std::size_t r = 0; r < training.regions.size(); ++r) {
    auto table = build(&used[r]);
    if (table.words.empty()) fallback_regions_.push_back(static_cast<std::uint32_t>(r));
    region_cdfs_.push_back(std::move(table));
  }
}

double NoiseModel::probability(std::uint32_t region, std::uint32_t word) const {
  const auto& table = region_cdfs_.at(region).words.empty() ? full_ : region_cdfs_[region];
  const auto it = std::lower_bound(table.words.begin(), table.words.end(), word);
  if (it == table.words.end() || *it != word) return 0.0;
  const auto i = static_cast<std::size_t>(it - table.words.begin());
  return table.cdf[i] - (i == 0 ? 0.0 : table.cdf[i - 1]);
}

std::uint32_t NoiseModel::draw(const Table& table, Rng& rng) const {
  const double u = uniform01(rng);
  auto i = static_cast<std::size_t>(std::upper_bound(table.cdf.begin(), table.cdf.end(), u) -
                                    table.cdf.begin());
  return table.words[std::min(i, table.words.size() - 1)];
}

void NoiseModel::sample(std::uint32_t region, std::uint32_t positive, std::size_t k, Rng& rng,
                        std::vector<std::uint32_t>& out) const {
  out.clear();
  const auto& table = region_cdfs_.at(region);
  if (!table.words.empty()) {
    for (std::size_t i = 0; i < k; ++i) out.push_back(draw(table, rng));
    return;
  }
  if (full_.words.size() < 2) {
    throw ComputeError("cannot draw negative samples from a one-term vocabulary");
  }
  while (out.size() < k) {
    const auto w = draw(full_, rng);
    if (w != positive) out.push_back(w);
  }
}

std::vector<std::uint32_t> NoiseModel::sample(std::uint32_t region, std::uint32_t positive,
                                              std::size_t k, Rng& rng) const {
  std::vector<std::uint32_t> out;
  sample(region, positive, k, rng, out);
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_dimensions(std::span<const double> region, std::span<const double> positive,
                      std::span<const std::span<const double>> negatives) {
  const auto d = region.size();
  bool ok = positive.size() == d;
  for (const auto& n : negatives) ok = ok && n.size() == d;
  if (!ok) throw InputError("embedding vectors have inconsistent dimensions");
}

}  // namespace

double pair_loss(std::span<const double> region, std::span<const double> positive,
                 std::span<const std::span<const double>> negatives) {
  check_dimensions(region, positive, negatives);
  double loss = neg_log_sigmoid(dot(positive, region));
  for (const auto& w : negatives) loss += neg_log_sigmoid(-dot(w, region));
  return loss;
}

PairGradients pair_gradients(std::span<const double> region, std::span<const double> positive,
                             std::span<const std::span<const double>> negatives) {
  check_dimensions(region, positive, negatives);
  const auto d = region.size();
  PairGradients g;
  g.region.assign(d, 0.0);
  // dJ/d(w_o.r) = -(1 - σ(w_o.r)) = -σ(-w_o.r)
  const double coeff_o = -sigmoid(-dot(positive, region));
  g.positive.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    g.region[i] += coeff_o * positive[i];
    g.positive[i] = coeff_o * region[i];
  }
  for (const auto& w : negatives) {
    const double coeff_k = sigmoid(dot(w, region));
    std::vector<double> gw(d);
    for (std::size_t i = 0; i < d; ++i) {
      g.region[i] += coeff_k * w[i];
      gw[i] = coeff_k * region[i];
    }
    g.negatives.push_back(std::move(gw));
  }
  return g;
}

std::span<const double> EmbeddingModel::region_vector(std::string_view region) const {
  const auto it = std::find(regions.begin(), regions.end(), region);
  if (it == regions.end()) throw InputError("region '" + std::string(region) + "' is not in the model");
  return region_vectors.row(static_cast<std::size_t>(it - regions.begin()));
}

namespace {

// Plain accesses for the deterministic path; relaxed atomics for the
// lock-free parallel path so concurrent updates are not data races.
template <bool Shared>
inline double load(const double& x) {
  if constexpr (Shared) {
    return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool Shared>
inline void add(double& x, double delta) {
  if constexpr (Shared) {
    std::atomic_ref<double> ref(x);
    ref.store(ref.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
  } else {
    x += delta;
  }
}

struct Workspace {
  std::vector<std::uint32_t> negatives;
  std::vector<double> region;       // snapshot of r
  std::vector<double> region_grad;  // dJ/dr
};

/// One SGD step on one (region, word) pair. Returns the pair loss at the
/// pre-update parameters.
template <bool Shared>
double sgd_step(const TrainingPair& pair, double lr, std::size_t k, const NoiseModel& noise,
                VectorTable& regions, VectorTable& words, Rng& rng, Workspace& ws) {
  const auto d = regions.dimension();
  noise.sample(pair.region, pair.word, k, rng, ws.negatives);

  auto r = regions.row(pair.region);
  for (std::size_t i = 0; i < d; ++i) ws.region[i] = load<Shared>(r[i]);
  std::fill(ws.region_grad.begin(), ws.region_grad.end(), 0.0);

  auto update_word = [&](std::uint32_t word, bool positive) {
    auto w = words.row(word);
    double score = 0.0;
    for (std::size_t i = 0; i < d; ++i) score += load<Shared>(w[i]) * ws.region[i];
    // coefficient of dJ/dscore for this term
    const double coeff = positive ? -sigmoid(-score) : sigmoid(score);
    for (std::size_t i = 0; i < d; ++i) {
      ws.region_grad[i] += coeff * load<Shared>(w[i]);
      add<Shared>(w[i], -lr * coeff * ws.region[i]);
    }
    return positive ? neg_log_sigmoid(score) : neg_log_sigmoid(-score);
  };

  double loss = update_word(pair.word, true);
  for (const auto w : ws.negatives) loss += update_word(w, false);
  for (std::size_t i = 0; i < d; ++i) add<Shared>(r[i], -lr * ws.region_grad[i]);
  return loss;
}

bool all_finite(const VectorTable& table) {
  return std::all_of(table.values().begin(), table.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

EmbeddingModel train(const TrainingSet& training, const EmbeddingConfig& config) {
  config.validate();
  if (training.pairs.empty()) throw InputError("no training pairs");

  const auto d = config.dimension;
  EmbeddingModel model;
  model.regions = training.regions;
  model.words = training.vocabulary.terms();
  model.config = config;
  model.region_vectors = VectorTable(training.regions.size(), d);
  model.word_vectors = VectorTable(training.vocabulary.size(), d);

  const NoiseModel noise(training, config.noise_power);
  for (const auto r : noise.fallback_regions()) {
    model.warnings.push_back("region '" + training.regions[r] +
                             "' uses every vocabulary term; negatives fall back to the full "
                             "vocabulary minus the positive word");
  }

  Rng rng(config.seed);
  const double spread = 1.0 / static_cast<double>(d);
  for (std::size_t r = 0; r < model.region_vectors.rows(); ++r) {
    for (auto& v : model.region_vectors.row(r)) v = (uniform01(rng) - 0.5) * spread;
  }
  for (std::size_t w = 0; w < model.word_vectors.rows(); ++w) {
    for (auto& v : model.word_vectors.row(w)) v = (uniform01(rng) - 0.5) * spread;
  }

  const std::size_t n = training.pairs.size();
  const double total_steps = static_cast<double>(config.epochs) * static_cast<double>(n);
  auto rate = [&](std::size_t epoch, std::size_t position) {
    const double step = static_cast<double>(epoch) * static_cast<double>(n) +
                        static_cast<double>(position);
    return config.learning_rate -
           (config.learning_rate - config.min_learning_rate) * step / total_steps;
  };

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const std::size_t threads = std::min(config.threads, n);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    if (threads == 1) {
      Workspace ws{{}, std::vector<double>(d), std::vector<double>(d)};
      for (std::size_t i = 0; i < n; ++i) {
        epoch_loss += sgd_step<false>(training.pairs[order[i]], rate(epoch, i), config.negatives,
                                      noise, model.region_vectors, model.word_vectors, rng, ws);
      }
    } else {
      std::vector<double> shard_loss(threads, 0.0);
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          Rng local(splitmix64(config.seed ^ splitmix64(epoch * threads + t + 1)));
          Workspace ws{{}, std::vector<double>(d), std::vector<double>(d)};
          const std::size_t begin = n * t / threads;
          const std::size_t end = n * (t + 1) / threads;
          for (std::size_t i = begin; i < end; ++i) {
            shard_loss[t] += sgd_step<true>(training.pairs[order[i]], rate(epoch, i),
                                            config.negatives, noise, model.region_vectors,
                                            model.word_vectors, local, ws);
          }
        });
      }
      for (auto& th : pool) th.join();
      for (double l : shard_loss) epoch_loss += l;
    }
    const double mean_loss = epoch_loss / static_cast<double>(n);
    if (!std::isfinite(mean_loss) || !all_finite(model.region_vectors) ||
        !all_finite(model.word_vectors)) {
      std::ostringstream msg;
      msg << "training diverged in epoch " << epoch + 1 << " (non-finite loss or weights); "
          << "learning rate " << config.learning_rate << " is likely too high";
      throw ComputeError(msg.str());
    }
    model.epoch_losses.push_back(mean_loss);
  }
  model.final_loss = model.epoch_losses.back();
  return model;
}

void save_model(std::ostream& out, const EmbeddingModel& model) {
  const auto d = model.region_vectors.dimension();
  out << d << ' ' << model.words.size() << ' ' << model.regions.size() << ' '
      << model.config.seed << ' ' << kEmbeddingVariant << '\n';
  auto write_rows = [&](const std::vector<std::string>& ids, const VectorTable& table) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out << io::escape_field(ids[i]);
      for (double v : table.row(i)) out << ' ' << io::format_double17(v);
      out << '\n';
    }
  };
  write_rows(model.regions, model.region_vectors);
  write_rows(model.words, model.word_vectors);
}

void save_model(const std::filesystem::path& path, const EmbeddingModel& model) {
  auto out = io::open_output(path);
  save_model(out, model);
  if (!out) throw InputError("failed writing " + path.string());
}

EmbeddingModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("embedding model is empty");
  const auto header = io::split(io::trim(line), ' ');
  if (header.size() != 5) throw InputError("embedding model header must have 5 fields");
  const auto d = io::parse_uint(header[0], "dimension");
  const auto vocab = io::parse_uint(header[1], "vocabulary size");
  const auto regions = io::parse_uint(header[2], "region count");
  if (d == 0) throw InputError("embedding model has dimension 0");
  if (header[4] != kEmbeddingVariant) {
    throw InputError("unsupported embedding variant '" + header[4] + "'");
  }

  EmbeddingModel model;
  model.config.dimension = d;
  model.config.seed = io::parse_uint(header[3], "seed");
  model.region_vectors = VectorTable(regions, d);
  model.word_vectors = VectorTable(vocab, d);
  auto read_rows = [&](std::size_t count, std::vector<std::string>& ids, VectorTable& table) {
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(in, line)) throw InputError("embedding model is truncated");
      const auto fields = io::split(line, ' ');
      if (fields.size() != d + 1) {
        throw InputError("embedding model row " + std::to_string(ids.size() + 1) + " has " +
                         std::to_string(fields.size() - 1) + " values, expected " +
                         std::to_string(d));
      }
      ids.push_back(io::unescape_field(fields[0]));
      auto row = table.row(i);
      for (std::size_t j = 0; j < d; ++j) row[j] = io::parse_double(fields[j + 1], "vector value");
    }
  };
  read_rows(regions, model.regions, model.region_vectors);
  read_rows(vocab, model.words, model.word_vectors);
  return model;
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  auto in = io::open_input(path);
  return load_model(in);
}

}  // namespace poiname
