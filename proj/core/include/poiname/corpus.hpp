#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace poiname {

/// One point of interest as read from the business export.
struct PoiRecord {
  std::string name;
  std::string region;
  double latitude = 0.0;
  double longitude = 0.0;
  std::vector<std::string> categories;
};

/// JSON field names used by load_pois. The defaults match the Yelp
/// business export, except `region`, which Yelp does not carry.
struct FieldSchema {
  std::string name = "name";
  std::string latitude = "latitude";
  std::string longitude = "longitude";
  std::string region = "region";
  std::string city = "city";
  std::string state = "state";
  std::string categories = "categories";
};

/// city,state -> metropolitan-area label.
///
/// File format: one mapping per line, `City,ST<TAB>label`. Lines starting
/// with '#' and blank lines are ignored. Keys compare case-insensitively
/// after trimming.
class RegionMapping {
 public:
  static RegionMapping parse(std::istream& in);
  static RegionMapping load(const std::filesystem::path& path);

  void add(std::string_view city, std::string_view state, std::string label);
  std::optional<std::string> lookup(std::string_view city, std::string_view state) const;
  std::size_t size() const { return entries_.size(); }

 private:
  static std::string key(std::string_view city, std::string_view state);
  std::map<std::string, std::string> entries_;
};

struct Rejection {
  std::size_t line = 0;  // 1-based line in the source
  std::string reason;
};

struct IngestResult {
  std::vector<PoiRecord> records;
  std::vector<Rejection> rejections;
};

/// Reads newline-delimited JSON records. Blank lines are skipped; every
/// other line yields either a record or a Rejection with its reason.
/// A record's region comes from the `region` field when present, otherwise
/// from `mapping` via city and state.
IngestResult load_pois(std::istream& source, const FieldSchema& schema = {},
                       const RegionMapping* mapping = nullptr);

/// Throws InputError when the file cannot be opened.
IngestResult load_pois(const std::filesystem::path& path, const FieldSchema& schema = {},
                       const RegionMapping* mapping = nullptr);

inline constexpr std::size_t kNoSource = std::numeric_limits<std::size_t>::max();

struct TokenizedName {
  std::vector<std::string> tokens;
  std::size_t source = kNoSource;  // index of the PoiRecord it came from
  bool degenerate = false;         // name had no characters left after stripping
};

/// Staged corpus file written by `poiname ingest`: one record per line,
/// tab-separated `region, latitude, longitude, categories, name`, categories
/// joined by '|'. Tabs and newlines inside text fields become spaces.
void write_records(std::ostream& out, std::span<const PoiRecord> records);
std::vector<PoiRecord> read_records(std::istream& in);

/// Lowercases, turns every punctuation or symbol code point into a space and
/// splits on whitespace. Digits and stop words are kept.
TokenizedName tokenize(std::string_view name);

struct RegionCorpus {
  std::string region;
  std::vector<TokenizedName> documents;
  bool dedup_applied = false;

  std::size_t token_count() const;
};

using RegionCorpora = std::map<std::string, RegionCorpus>;

/// Groups records by region, in input order. With `dedup`, a document whose
/// token sequence already occurred in the same region is dropped.
RegionCorpora partition_by_region(std::span<const PoiRecord> records, bool dedup);

struct TypedSubset {
  std::string region;
  std::string category;
  std::vector<TokenizedName> documents;
};

struct TypedSubsetSelection {
  std::vector<TypedSubset> subsets;  // sorted by (category, region)
  std::vector<std::string> categories;
  std::vector<std::string> warnings;
};

/// Keeps the categories that have at least `min_count` POIs in every
/// required region (all regions present in `records` when the set is empty).
/// A POI with several categories lands in several subsets. With `dedup`,
/// duplicate token sequences inside a subset are collapsed after the
/// threshold has been applied to the raw POI counts.
TypedSubsetSelection typed_subsets(std::span<const PoiRecord> records, std::size_t min_count,
                                   const std::set<std::string>& required_regions = {},
                                   bool dedup = false);

/// Sorted, duplicate-free term list with a term -> position index.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// `terms` need not be sorted or unique.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t index) const { return terms_[index]; }
  std::optional<std::size_t> index_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Throws InputError("empty corpus") if no document contributes a token.
Vocabulary build_vocabulary(const RegionCorpora& corpora);

}  // namespace poiname
