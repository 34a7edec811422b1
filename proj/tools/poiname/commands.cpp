#include "poiname/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "poiname/analysis.hpp"
#include "poiname/corpus.hpp"
#include "poiname/embed.hpp"
#include "poiname/error.hpp"
#include "poiname/geo.hpp"
#include "poiname/io.hpp"
#include "poiname/localness.hpp"
#include "poiname/manifest.hpp"
#include "poiname/random.hpp"
#include "poiname/regionvec.hpp"
#include "poiname/termstats.hpp"
#include "poiname/version.hpp"

namespace poiname::cli {
namespace fs = std::filesystem;

namespace {

using io::format_double;

constexpr const char* kCorpusFile = "corpus.tsv";
constexpr const char* kRegionsFile = "regions.tsv";
constexpr const char* kModelFile = "embedding_model.txt";
constexpr const char* kDistancesFile = "distances.tsv";

void write_file(const fs::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
  auto out = io::open_output(dir / name);
  body(out);
  out.flush();
  if (!out) throw InputError("failed writing " + (dir / name).string());
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

/// Lowercase ASCII letters and digits kept, everything else becomes '_'.
std::string file_slug(std::string_view region) {
  std::string out;
  for (unsigned char c : region) {
    out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '_';
  }
  return out.empty() ? "_" : out;
}

std::vector<PoiRecord> load_corpus(const fs::path& dir, Manifest& manifest) {
  require_artifact(dir, "ingest", kCorpusFile);
  manifest.requires_stage("ingest");
  manifest.consume(kCorpusFile);
  auto in = io::open_input(dir / kCorpusFile);
  return read_records(in);
}

std::map<std::string, GeoPoint> load_centroids(const fs::path& dir, Manifest& manifest) {
  require_artifact(dir, "ingest", kRegionsFile);
  manifest.requires_stage("ingest");
  manifest.consume(kRegionsFile);
  auto in = io::open_input(dir / kRegionsFile);
  std::string line;
  std::getline(in, line);
  std::map<std::string, GeoPoint> centroids;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = io::split(line, '\t');
    if (f.size() != 6) throw InputError("malformed " + std::string(kRegionsFile) + " row: " + line);
    centroids.emplace(f[0], GeoPoint(io::parse_double(f[4], "centroid latitude"),
                                     io::parse_double(f[5], "centroid longitude")));
  }
  return centroids;
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::string input;
  std::string mapping;
  std::string out;
};

void cmd_ingest(const IngestOptions& o, std::ostream& console) {
  const fs::path dir(o.out);
  std::optional<RegionMapping> mapping;
  if (!o.mapping.empty()) mapping = RegionMapping::load(o.mapping);
  auto result = load_pois(fs::path(o.input), {}, mapping ? &*mapping : nullptr);
  if (result.records.empty()) throw InputError("empty corpus: no valid records in " + o.input);

  const auto corpora = partition_by_region(result.records, false);
  build_vocabulary(corpora);
  const auto unique = partition_by_region(result.records, true);
  const auto centroids = region_centroids(result.records);

  fs::create_directories(dir);
  Manifest manifest("ingest", dir);
  manifest.set("source.input", o.input);
  manifest.set("source.input.digest", io::file_digest(o.input));
  manifest.set("source.mapping", o.mapping);
  if (!o.mapping.empty()) manifest.set("source.mapping.digest", io::file_digest(o.mapping));

  write_file(dir, kCorpusFile, [&](std::ostream& out) { write_records(out, result.records); });
  write_file(dir, kRegionsFile, [&](std::ostream& out) {
    out << "region\tpois\tunique_names\ttokens\tcentroid_lat\tcentroid_lon\n";
    for (const auto& [region, corpus] : corpora) {
      const auto& c = centroids.at(region);
      out << region << '\t' << corpus.documents.size() << '\t' << unique.at(region).documents.size()
          << '\t' << corpus.token_count() << '\t' << format_double(c.latitude()) << '\t'
          << format_double(c.longitude()) << '\n';
    }
  });
  write_file(dir, "rejections.tsv", [&](std::ostream& out) {
    out << "line\treason\n";
    for (const auto& r : result.rejections) out << r.line << '\t' << r.reason << '\n';
  });
  std::vector<std::pair<std::string, std::string>> summary = {
      {"records", std::to_string(result.records.size())},
      {"rejected", std::to_string(result.rejections.size())},
      {"regions", std::to_string(corpora.size())}};
  for (const auto& [region, corpus] : corpora) {
    summary.emplace_back("region." + region, std::to_string(corpus.documents.size()));
  }
  write_file(dir, "ingest_summary.txt", [&](std::ostream& out) { io::write_key_values(out, summary); });

  for (const char* f : {kCorpusFile, kRegionsFile, "rejections.tsv", "ingest_summary.txt"}) {
    manifest.produce(f);
  }
  manifest.write();

  console << "ingested " << result.records.size() << " records in " << corpora.size()
          << " regions (" << result.rejections.size() << " rejected)\n";
  for (const auto& [region, corpus] : corpora) {
    console << "  " << region << '\t' << corpus.documents.size() << '\n';
  }
}

// ---------------------------------------------------------------- zipf

struct ZipfOptions {
  std::string out;
  bool dedup = false;
};

void cmd_zipf(const ZipfOptions& o, std::ostream& console) {
  const fs::path dir(o.out);
  Manifest manifest("zipf", dir);
  const auto records = load_corpus(dir, manifest);
  manifest.set("dedup", bool_text(o.dedup));

  const auto ranked = rank_terms(term_frequencies(partition_by_region(records, o.dedup)));
  const auto fit = fit_zipf(ranked);

  write_file(dir, "zipf_ranks.tsv", [&](std::ostream& out) {
    out << "rank\tterm\tfrequency\n";
    for (const auto& t : ranked) out << t.rank << '\t' << t.term << '\t' << t.frequency << '\n';
  });
  write_file(dir, "zipf_fit.txt", [&](std::ostream& out) {
    io::write_key_values(out, {{"A", format_double(fit.intercept)},
                               {"b", format_double(fit.slope)},
                               {"r2", format_double(fit.r_squared)},
                               {"points", std::to_string(fit.points)}});
  });
  manifest.produce("zipf_ranks.tsv");
  manifest.produce("zipf_fit.txt");
  manifest.write();

  console << "zipf: b=" << format_double(fit.slope) << " r2=" << format_double(fit.r_squared)
          << " over " << fit.points << " terms\n";
}

// ---------------------------------------------------------------- local-terms

struct LocalTermsOptions {
  std::string out;
  std::size_t top = 30;
  std::string idf_variant = "pure";
};

void cmd_local_terms(const LocalTermsOptions& o, std::ostream& console) {
  const fs::path dir(o.out);
  const auto variant = parse_idf_variant(o.idf_variant);
  Manifest manifest("local_terms", dir);
  const auto records = load_corpus(dir, manifest);
  manifest.set("idf_variant", std::string(to_string(variant)));
  manifest.set("top", std::to_string(o.top));

  const auto table = geo_tfidf(partition_by_region(records, true), variant);
  const auto local = top_local_terms(table, o.top);

  std::set<std::string> slugs;
  for (const auto& [region, set] : local) {
    if (!slugs.insert(file_slug(region)).second) {
      throw InputError("regions map to the same file name: " + file_slug(region));
    }
  }
  fs::create_directories(dir / "local_terms");
  write_file(dir, "local_terms.tsv", [&](std::ostream& out) {
    out << "region\trank\tterm\tweight\n";
    for (const auto& [region, set] : local) {
      for (std::size_t i = 0; i < set.terms.size(); ++i) {
        out << region << '\t' << i + 1 << '\t' << set.terms[i].term << '\t'
            << format_double(set.terms[i].weight) << '\n';
      }
    }
  });
  manifest.produce("local_terms.tsv");
  for (const auto& [region, set] : local) {
    const auto name = "local_terms/" + file_slug(region) + ".tsv";
    write_file(dir, name, [&](std::ostream& out) {
      out << "rank\tterm\tweight\n";
      for (std::size_t i = 0; i < set.terms.size(); ++i) {
        out << i + 1 << '\t' << set.terms[i].term << '\t' << format_double(set.terms[i].weight) << '\n';
      }
    });
    manifest.produce(name);
    console << region << ": " << set.terms.size() << " local terms\n";
  }
  manifest.write();
}

// ---------------------------------------------------------------- type-usage

struct TypeUsageOptions {
  std::string out;
  std::size_t top = 100;
  std::string idf_variant = "pure";
  std::size_t min_count = 100;
  std::string log_base = "e";
  bool dedup_subsets = false;
};

void cmd_type_usage(const TypeUsageOptions& o, std::ostream& console) {
  const fs::path dir(o.out);
  const auto variant = parse_idf_variant(o.idf_variant);
  const auto base = parse_log_base(o.log_base);
  Manifest manifest("type_usage", dir);
  const auto records = load_corpus(dir, manifest);
  manifest.set("idf_variant", std::string(to_string(variant)));
  manifest.set("top", std::to_string(o.top));
  manifest.set("min_count", std::to_string(o.min_count));
  manifest.set("log_base", std::string(to_string(base)));
  manifest.set("dedup_subsets", bool_text(o.dedup_subsets));

  const auto local = top_local_terms(geo_tfidf(partition_by_region(records, true), variant), o.top);
  const auto selection = typed_subsets(records, o.min_count, {}, o.dedup_subsets);
  for (const auto& w : selection.warnings) console << "warning: " << w << '\n';
  if (selection.categories.empty()) {
    throw InputError("no category reaches " + std::to_string(o.min_count) + " POIs in every region");
  }
  const auto matrix = usage_percentages(selection.subsets, local);
  const auto distributions = usage_distributions(matrix);
  if (distributions.empty() || distributions.front().categories.empty()) {
    throw ComputeError("no category is defined in every region");
  }
  const auto pairwise = mean_pairwise_jsd(distributions, base);

  write_file(dir, "usage_matrix.tsv", [&](std::ostream& out) {
    out << "region";
    for (const auto& c : matrix.categories()) out << '\t' << c;
    out << '\n';
    for (std::size_t i = 0; i < matrix.regions().size(); ++i) {
      out << matrix.regions()[i];
      for (std::size_t j = 0; j < matrix.categories().size(); ++j) {
        const auto& cell = matrix.at(i, j);
        out << '\t' << (cell.defined() ? format_double(cell.percentage()) : "NA");
      }
      out << '\n';
    }
  });
  write_file(dir, "usage_counts.tsv", [&](std::ostream& out) {
    out << "region\tcategory\tlocal\ttotal\n";
    for (std::size_t i = 0; i < matrix.regions().size(); ++i) {
      for (std::size_t j = 0; j < matrix.categories().size(); ++j) {
        const auto& cell = matrix.at(i, j);
        out << matrix.regions()[i] << '\t' << matrix.categories()[j] << '\t' << cell.local << '\t'
            << cell.total << '\n';
      }
    }
  });
  write_file(dir, "usage_distribution.tsv", [&](std::ostream& out) {
    out << "region";
    for (const auto& c : distributions.front().categories) out << '\t' << c;
    out << '\n';
    for (const auto& d : distributions) {
      out << d.region;
      for (double p : d.probabilities) out << '\t' << format_double(p);
      out << '\n';
    }
  });
  write_file(dir, "jsd_summary.txt", [&](std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"mean_jsd", format_double(pairwise.mean)},
        {"pairs", std::to_string(pairwise.pairs)},
        {"log_base", std::string(to_string(base))},
        {"categories", std::to_string(distributions.front().categories.size())},
        {"categories_dropped",
         std::to_string(matrix.categories().size() - distributions.front().categories.size())}};
    for (std::size_t a = 0; a < distributions.size(); ++a) {
      for (std::size_t b = a + 1; b < distributions.size(); ++b) {
        kv.emplace_back("jsd." + distributions[a].region + "." + distributions[b].region,
                        format_double(jsd(distributions[a].probabilities,
                                          distributions[b].probabilities, base)));
      }
    }
    io::write_key_values(out, kv);
  });
  for (const char* f : {"usage_matrix.tsv", "usage_counts.tsv", "usage_distribution.tsv", "jsd_summary.txt"}) {
    manifest.produce(f);
  }
  manifest.write();

  console << "type usage: " << selection.categories.size() << " categories, mean JSD "
          << format_double(pairwise.mean) << " over " << pairwise.pairs << " pairs\n";
}

// ---------------------------------------------------------------- vectors

struct VectorsOptions {
  std::string out;
  std::string mode = "count";
  std::string idf_variant = "pure";
  bool dedup = false;
};

void check_vector_mode(const std::string& mode) {
  if (mode != "count" && mode != "tfidf") {
    throw InputError("unknown vector mode '" + mode + "' (expected count or tfidf)");
  }
}

void cmd_vectors(const VectorsOptions& o, std::ostream& console) {
  check_vector_mode(o.mode);
  const fs::path dir(o.out);
  const auto variant = parse_idf_variant(o.idf_variant);
  Manifest manifest("vectors_" + o.mode, dir);
  const auto records = load_corpus(dir, manifest);
  manifest.set("mode", o.mode);
  manifest.set("dedup", bool_text(o.dedup));
  if (o.mode == "tfidf") manifest.set("idf_variant", std::string(to_string(variant)));

  const auto corpora = partition_by_region(records, o.dedup);
  const auto vocab = build_vocabulary(corpora);
  std::vector<RegionVector> vectors;
  if (o.mode == "count") {
    for (const auto& [region, corpus] : corpora) vectors.push_back(count_vector(corpus, vocab));
  } else {
    const auto table = geo_tfidf(corpora, variant);
    for (const auto& [region, corpus] : corpora) vectors.push_back(tfidf_vector(corpus, vocab, table));
  }

  // Sparse long format: zero entries are omitted.
  const auto name = "vectors_" + o.mode + ".tsv";
  write_file(dir, name, [&](std::ostream& out) {
    out << "region\tterm\tvalue\n";
    for (const auto& v : vectors) {
      for (std::size_t j = 0; j < vocab.size(); ++j) {
        if (v.values[j] != 0.0) out << v.region << '\t' << vocab.term(j) << '\t' << format_double(v.values[j]) << '\n';
      }
    }
  });
  manifest.set("regions", std::to_string(vectors.size()));
  manifest.set("vocabulary", std::to_string(vocab.size()));
  manifest.produce(name);
  manifest.write();
  console << o.mode << " vectors: " << vectors.size() << " regions over " << vocab.size() << " terms\n";
}

std::vector<RegionVector> read_sparse_vectors(const fs::path& path,
                                              const std::vector<std::string>& regions) {
  auto in = io::open_input(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> rows;
  std::set<std::string> terms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = io::split(line, '\t');
    if (f.size() != 3) throw InputError("malformed vector row: " + line);
    terms.insert(f[1]);
    rows.push_back(std::move(f));
  }
  const Vocabulary vocab(std::vector<std::string>(terms.begin(), terms.end()));
  std::map<std::string, RegionVector> by_region;
  for (const auto& r : regions) by_region[r] = RegionVector{r, std::vector<double>(vocab.size(), 0.0), false};
  for (const auto& f : rows) {
    const auto it = by_region.find(f[0]);
    if (it == by_region.end()) throw InputError("vector file names unknown region '" + f[0] + "'");
    it->second.values[*vocab.index_of(f[1])] = io::parse_double(f[2], "vector value");
  }
  std::vector<RegionVector> out;
  for (auto& [region, v] : by_region) {
    v.empty_source = std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0.0; });
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- embed

struct EmbedOptions {
  std::string out;
  EmbeddingConfig config;
};

void cmd_embed(const EmbedOptions& o, std::ostream& console) {
  const fs::path dir(o.out);
  Manifest manifest("embed", dir);
  const auto records = load_corpus(dir, manifest);
  auto config = o.config;
  config.seed = derive_seed(o.config.seed, "embed");
  config.validate();
  manifest.set("variant", std::string(kEmbeddingVariant));
  manifest.set("seed", std::to_string(o.config.seed));
  manifest.set("stream_seed", std::to_string(config.seed));
  manifest.set("dim", std::to_string(config.dimension));
  manifest.set("negatives", std::to_string(config.negatives));
  manifest.set("epochs", std::to_string(config.epochs));
  manifest.set("learning_rate", format_double(config.learning_rate));
  manifest.set("min_learning_rate", format_double(config.min_learning_rate));
  manifest.set("noise_power", format_double(config.noise_power));
  manifest.set("threads", std::to_string(config.threads));
  manifest.set("deterministic", bool_text(config.threads == 1));

  const auto model = train(build_training_pairs(partition_by_region(records, false)), config);
  for (const auto& w : model.warnings) console << "warning: " << w << '\n';

  save_model(dir / kModelFile, model);
  write_file(dir, "embedding_loss.tsv", [&](std::ostream& out) {
    out << "epoch\tmean_loss\n";
    for (std::size_t e = 0; e < model.epoch_losses.size(); ++e) {
      out << e + 1 << '\t' << format_double(model.epoch_losses[e]) << '\n';
    }
  });
  manifest.produce(kModelFile);
  manifest.produce("embedding_loss.tsv");
  manifest.write();
  console << "embedding: " << model.regions.size() << " regions, " << model.words.size()
          << " words, final loss " << format_double(model.final_loss) << '\n';
}

// ---------------------------------------------------------------- similarity

struct SimilarityOptions {
  std::string out;
  std::string mode = "embedding";
  bool km = false;
};

void check_similarity_mode(const std::string& mode) {
  if (mode != "count" && mode != "tfidf" && mode != "embedding") {
    throw InputError("unknown similarity mode '" + mode + "' (expected count, tfidf or embedding)");
  }
}

void cmd_similarity(const SimilarityOptions& o, std::ostream& console) {
  check_similarity_mode(o.mode);
  const fs::path dir(o.out);
  Manifest manifest("similarity_" + o.mode, dir);
  const auto centroids = load_centroids(dir, manifest);
  std::vector<std::string> regions;
  for (const auto& [region, point] : centroids) regions.push_back(region);
  manifest.set("mode", o.mode);

  std::vector<RegionVector> vectors;
  if (o.mode == "embedding") {
    require_artifact(dir, "embed", kModelFile);
    manifest.requires_stage("embed");
    manifest.consume(kModelFile);
    const auto model = load_model(dir / kModelFile);
    for (const auto& r : regions) {
      const auto v = model.region_vector(r);
      vectors.push_back(RegionVector{r, {v.begin(), v.end()}, false});
    }
  } else {
    const auto stage = "vectors_" + o.mode;
    const auto file = stage + ".tsv";
    require_artifact(dir, stage, file);
    manifest.requires_stage(stage);
    manifest.consume(file);
    vectors = read_sparse_vectors(dir / file, regions);
  }

  const auto similarity = similarity_matrix(vectors);
  const auto distances = distance_matrix(centroids);
  const auto sim_file = "similarity_" + o.mode + ".tsv";
  write_file(dir, sim_file, [&](std::ostream& out) { io::write_matrix(out, similarity); });
  write_file(dir, kDistancesFile, [&](std::ostream& out) { io::write_matrix(out, distances); });
  manifest.produce(sim_file);
  manifest.produce(kDistancesFile);
  if (o.km) {
    write_file(dir, "distances_km.tsv", [&](std::ostream& out) { io::write_matrix(out, distances, 1e-3); });
    manifest.produce("distances_km.tsv");
  }
  manifest.write();
  console << o.mode << " similarity over " << regions.size() << " regions\n";
}

// ---------------------------------------------------------------- decay

struct DecayOptions {
  std::string out;
  std::string mode = "embedding";
  std::string p_method = "permutation";
  std::size_t permutations = 100000;
  std::uint64_t seed = 1;
};

void cmd_decay(const DecayOptions& o, std::ostream& console) {
  check_similarity_mode(o.mode);
  const fs::path dir(o.out);
  const auto stage = "similarity_" + o.mode;
  const auto sim_file = stage + ".tsv";
  require_artifact(dir, stage, sim_file);
  require_artifact(dir, stage, kDistancesFile);

  Manifest manifest("decay_" + o.mode, dir);
  manifest.requires_stage(stage);
  manifest.consume(sim_file);
  manifest.consume(kDistancesFile);
  PValueOptions p;
  p.method = parse_p_method(o.p_method);
  p.permutations = o.permutations;
  p.seed = derive_seed(o.seed, "decay");
  manifest.set("mode", o.mode);
  manifest.set("p_method", std::string(to_string(p.method)));
  if (p.method == PValueMethod::permutation) manifest.set("permutations", std::to_string(p.permutations));
  manifest.set("seed", std::to_string(o.seed));
  manifest.set("stream_seed", std::to_string(p.seed));

  const SimilarityMatrix similarity(io::read_matrix_file(dir / sim_file));
  const DistanceMatrix distances(io::read_matrix_file(dir / kDistancesFile));
  const auto observations = pair_observations(similarity, distances);
  std::vector<double> s, d;
  for (const auto& obs : observations) {
    s.push_back(obs.similarity);
    d.push_back(obs.distance);
  }
  const auto r = pearson(d, s, p);
  const auto rho = spearman(d, s, p);
  const auto fit = fit_distance_decay(observations);

  const auto table = "decay_observations_" + o.mode + ".tsv";
  write_file(dir, table, [&](std::ostream& out) {
    out << "region_a\tregion_b\tsimilarity\tdistance_m\tln_s\tln_d\n";
    for (const auto& obs : observations) {
      out << obs.region_a << '\t' << obs.region_b << '\t' << format_double(obs.similarity) << '\t'
          << format_double(obs.distance) << '\t' << format_double(std::log(obs.similarity)) << '\t'
          << format_double(std::log(obs.distance)) << '\n';
    }
  });
  const auto summary = "decay_" + o.mode + ".txt";
  write_file(dir, summary, [&](std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto* c : {&r, &rho}) {
      const std::string prefix(to_string(c->method));
      kv.emplace_back(prefix + ".method", prefix);
      kv.emplace_back(prefix + ".coefficient", format_double(c->coefficient));
      kv.emplace_back(prefix + ".p_value", format_double(c->p_value));
      kv.emplace_back(prefix + ".p_method", std::string(to_string(c->p_method)));
      kv.emplace_back(prefix + ".n", std::to_string(c->n));
      kv.emplace_back(prefix + ".seed", std::to_string(c->seed));
    }
    kv.emplace_back("fit.intercept", format_double(fit.intercept));
    kv.emplace_back("fit.A", format_double(fit.scale()));
    kv.emplace_back("fit.slope", format_double(fit.slope));
    kv.emplace_back("fit.r2", format_double(fit.r_squared));
    kv.emplace_back("fit.points", std::to_string(fit.points));
    io::write_key_values(out, kv);
  });
  manifest.produce(table);
  manifest.produce(summary);
  manifest.write();

  console << o.mode << " decay: pearson " << format_double(r.coefficient) << " (p="
          << format_double(r.p_value) << "), spearman " << format_double(rho.coefficient)
          << " (p=" << format_double(rho.p_value) << "), slope " << format_double(fit.slope)
          << ", r2 " << format_double(fit.r_squared) << '\n';
}

void add_out(CLI::App* cmd, std::string& out) {
  cmd->add_option("--out", out, "Working directory holding the staged artifacts")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localness and distance-decay analysis of POI names", "poiname"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Load POI records and stage the corpus");
  c_ingest->add_option("--input", ingest.input, "Newline-delimited JSON business records")->required();
  c_ingest->add_option("--mapping", ingest.mapping, "City,ST<TAB>region mapping file");
  add_out(c_ingest, ingest.out);

  ZipfOptions zipf;
  auto* c_zipf = app.add_subcommand("zipf", "Rank terms and fit the rank-frequency law");
  add_out(c_zipf, zipf.out);
  c_zipf->add_flag("--dedup", zipf.dedup, "Count identical names once per region");

  LocalTermsOptions local;
  auto* c_local = app.add_subcommand("local-terms", "Top geo TF-IDF terms per region");
  add_out(c_local, local.out);
  c_local->add_option("--top", local.top, "Terms per region")->capture_default_str();
  c_local->add_option("--idf-variant", local.idf_variant, "pure or plus-one")->capture_default_str();

  TypeUsageOptions usage;
  auto* c_usage = app.add_subcommand("type-usage", "Local-term usage by POI category and JSD");
  add_out(c_usage, usage.out);
  c_usage->add_option("--top", usage.top, "Local terms per region")->capture_default_str();
  c_usage->add_option("--idf-variant", usage.idf_variant, "pure or plus-one")->capture_default_str();
  c_usage->add_option("--min-count", usage.min_count, "POIs a category needs in every region")
      ->capture_default_str();
  c_usage->add_option("--log-base", usage.log_base, "e or 2")->capture_default_str();
  c_usage->add_flag("--dedup-subsets", usage.dedup_subsets, "Count identical names once per subset");

  VectorsOptions vectors;
  auto* c_vectors = app.add_subcommand("vectors", "Bag-of-words region vectors");
  add_out(c_vectors, vectors.out);
  c_vectors->add_option("--mode", vectors.mode, "count or tfidf")->capture_default_str();
  c_vectors->add_option("--idf-variant", vectors.idf_variant, "pure or plus-one")->capture_default_str();
  c_vectors->add_flag("--dedup", vectors.dedup, "Count identical names once per region");

  EmbedOptions embed;
  auto* c_embed = app.add_subcommand("embed", "Train region embeddings with negative sampling");
  add_out(c_embed, embed.out);
  c_embed->add_option("--dim", embed.config.dimension, "Vector dimension")->capture_default_str();
  c_embed->add_option("--negatives", embed.config.negatives, "Negative samples per pair")->capture_default_str();
  c_embed->add_option("--epochs", embed.config.epochs, "Passes over the training pairs")->capture_default_str();
  c_embed->add_option("--lr", embed.config.learning_rate, "Initial learning rate")->capture_default_str();
  c_embed->add_option("--seed", embed.config.seed, "Run seed")->capture_default_str();
  c_embed->add_option("--threads", embed.config.threads, "Worker threads; 1 is deterministic")
      ->capture_default_str();

  SimilarityOptions sim;
  auto* c_sim = app.add_subcommand("similarity", "Region similarity and centroid distance matrices");
  add_out(c_sim, sim.out);
  c_sim->add_option("--mode", sim.mode, "count, tfidf or embedding")->capture_default_str();
  c_sim->add_flag("--km", sim.km, "Also write distances in kilometers");

  DecayOptions decay;
  auto* c_decay = app.add_subcommand("decay", "Correlate similarity with distance and fit the decay model");
  add_out(c_decay, decay.out);
  c_decay->add_option("--mode", decay.mode, "count, tfidf or embedding")->capture_default_str();
  c_decay->add_option("--p-method", decay.p_method, "permutation or t")->capture_default_str();
  c_decay->add_option("--permutations", decay.permutations, "Permutations for the p-value")
      ->capture_default_str();
  c_decay->add_option("--seed", decay.seed, "Run seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_ingest) cmd_ingest(ingest, out);
    if (*c_zipf) cmd_zipf(zipf, out);
    if (*c_local) cmd_local_terms(local, out);
    if (*c_usage) cmd_type_usage(usage, out);
    if (*c_vectors) cmd_vectors(vectors, out);
    if (*c_embed) cmd_embed(embed, out);
    if (*c_sim) cmd_similarity(sim, out);
    if (*c_decay) cmd_decay(decay, out);
  } catch (const InputError& e) {
    err << "poiname: " << e.what() << '\n';
    return 2;
  } catch (const ComputeError& e) {
    err << "poiname: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "poiname: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace poiname::cli
