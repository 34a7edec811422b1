#include "poiname/regionvec.hpp"

#include <cmath>

#include "poiname/error.hpp"

namespace poiname {

RegionVector count_vector(const RegionCorpus& corpus, const Vocabulary& vocab) {
  RegionVector v{corpus.region, std::vector<double>(vocab.size(), 0.0), false};
  std::size_t tokens = 0;
  for (const auto& doc : corpus.documents) {
    for (const auto& token : doc.tokens) {
      const auto j = vocab.index_of(token);
      if (!j) {
        throw InputError("vocabulary mismatch: '" + token + "' in region '" + corpus.region +
                         "' is not in the vocabulary");
      }
      v.values[*j] += 1.0;
      ++tokens;
    }
  }
  v.empty_source = tokens == 0;
  return v;
}

RegionVector tfidf_vector(const RegionCorpus& corpus, const Vocabulary& vocab,
                          const GeoTfidfTable& table) {
  const auto r = table.region_index(corpus.region);
  if (!r) throw InputError("region '" + corpus.region + "' is not in the TF-IDF table");
  RegionVector v{corpus.region, std::vector<double>(vocab.size(), 0.0), corpus.token_count() == 0};
  const auto& table_vocab = table.vocabulary();
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    if (const auto t = table_vocab.index_of(vocab.term(j))) v.values[j] = table.weight(*r, *t);
  }
  return v;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("cosine of vectors with different lengths");
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    dot += a[j] * b[j];
    aa += a[j] * a[j];
    bb += b[j] * b[j];
  }
  if (aa == 0.0 || bb == 0.0) throw ComputeError("undefined similarity: zero-norm vector");
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

double cosine(const RegionVector& a, const RegionVector& b) {
  try {
    return cosine(a.values, b.values);
  } catch (const ComputeError&) {
    throw ComputeError("undefined similarity between '" + a.region + "' and '" + b.region +
                       "': zero-norm vector");
  }
}

SimilarityMatrix similarity_matrix(std::span<const RegionVector> vectors) {
  std::vector<std::string> labels;
  for (const auto& v : vectors) labels.push_back(v.region);
  SimilarityMatrix m(std::move(labels));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    // validates the norm even though the diagonal is fixed at 1
    (void)cosine(vectors[i], vectors[i]);
    m.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double s = cosine(vectors[i], vectors[j]);
      m.at(i, j) = s;
      m.at(j, i) = s;
    }
  }
  return m;
}

}  // namespace poiname
