#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poiname/corpus.hpp"
#include "poiname/localness.hpp"
#include "poiname/matrix.hpp"

namespace poiname {

struct RegionVector {
  std::string region;
  std::vector<double> values;
  bool empty_source = false;  // region had no tokens; vector is all zeros
};

/// Entry j is the number of occurrences of vocabulary term j in the region.
/// Throws InputError("vocabulary mismatch") for a token outside `vocab`.
RegionVector count_vector(const RegionCorpus& corpus, const Vocabulary& vocab);

/// Entry j is the table weight of vocabulary term j for this region (0 when
/// the table has never seen the term).
/// Throws InputError when the region is not in the table.
RegionVector tfidf_vector(const RegionCorpus& corpus, const Vocabulary& vocab,
                          const GeoTfidfTable& table);

/// Throws InputError on a length mismatch and ComputeError("undefined
/// similarity") when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);
double cosine(const RegionVector& a, const RegionVector& b);

class SimilarityMatrix : public LabeledMatrix {
 public:
  using LabeledMatrix::LabeledMatrix;
  explicit SimilarityMatrix(LabeledMatrix matrix) : LabeledMatrix(std::move(matrix)) {}
};

/// Pairwise cosine in input order; unit diagonal, exactly symmetric.
SimilarityMatrix similarity_matrix(std::span<const RegionVector> vectors);

}  // namespace poiname
