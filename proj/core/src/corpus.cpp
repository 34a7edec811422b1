#include "poiname/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "poiname/error.hpp"
#include "poiname/io.hpp"

namespace poiname {
namespace {

using nlohmann::json;

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_separator(UChar32 c) {
  if (c < 0) return true;  // ill-formed UTF-8
  if (u_isUWhiteSpace(c)) return true;
  const auto mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_P_MASK | U_GC_S_MASK | U_GC_CC_MASK | U_GC_CF_MASK)) != 0;
}

std::optional<double> json_number(const json& object, const std::string& key) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (it->is_number()) return it->get<double>();
  if (it->is_string()) {
    try {
      return io::parse_double(it->get_ref<const std::string&>());
    } catch (const InputError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string json_string(const json& object, const std::string& key) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

std::vector<std::string> json_categories(const json& object, const std::string& key) {
  std::vector<std::string> out;
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) return out;
  auto push = [&out](std::string_view label) {
    label = io::trim(label);
    if (!label.empty()) out.emplace_back(label);
  };
  if (it->is_array()) {
    for (const auto& item : *it) {
      if (item.is_string()) push(item.get_ref<const std::string&>());
    }
  } else if (it->is_string()) {
    for (const auto& part : io::split(it->get_ref<const std::string&>(), ',')) push(part);
  }
  // a label listed twice must not put the POI into one subset twice
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string sanitize(std::string_view text, char replaced, char replacement) {
  std::string out(text);
  for (auto& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    if (c == replaced) c = replacement;
  }
  return out;
}

}  // namespace

std::string RegionMapping::key(std::string_view city, std::string_view state) {
  return ascii_lower(io::trim(city)) + ',' + ascii_lower(io::trim(state));
}

void RegionMapping::add(std::string_view city, std::string_view state, std::string label) {
  entries_[key(city, state)] = std::move(label);
}

std::optional<std::string> RegionMapping::lookup(std::string_view city,
                                                 std::string_view state) const {
  const auto it = entries_.find(key(city, state));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

RegionMapping RegionMapping::parse(std::istream& in) {
  RegionMapping mapping;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto view = io::trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    const auto comma = view.substr(0, tab).rfind(',');
    if (tab == std::string_view::npos || comma == std::string_view::npos) {
      throw InputError("region mapping line " + std::to_string(number) +
                       ": expected 'City,ST<TAB>label'");
    }
    const auto label = io::trim(view.substr(tab + 1));
    if (label.empty()) {
      throw InputError("region mapping line " + std::to_string(number) + ": empty label");
    }
    mapping.add(view.substr(0, comma), view.substr(comma + 1, tab - comma - 1), std::string(label));
  }
  return mapping;
}

RegionMapping RegionMapping::load(const std::filesystem::path& path) {
  auto in = io::open_input(path);
  return parse(in);
}

IngestResult load_pois(std::istream& source, const FieldSchema& schema,
                       const RegionMapping* mapping) {
  IngestResult result;
  std::string line;
  std::size_t number = 0;
  auto reject = [&result, &number](std::string reason) {
    result.rejections.push_back({number, std::move(reason)});
  };
  while (std::getline(source, line)) {
    ++number;
    if (io::trim(line).empty()) continue;

    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error& e) {
      reject("malformed record");
      continue;
    }
    if (!object.is_object()) {
      reject("malformed record");
      continue;
    }

    PoiRecord record;
    record.name = json_string(object, schema.name);
    if (io::trim(record.name).empty()) {
      reject("missing name");
      continue;
    }
    const auto lat = json_number(object, schema.latitude);
    const auto lon = json_number(object, schema.longitude);
    if (!lat || !lon) {
      reject("missing coordinates");
      continue;
    }
    if (!(*lat >= -90.0 && *lat <= 90.0)) {
      reject("latitude out of range");
      continue;
    }
    if (!(*lon >= -180.0 && *lon <= 180.0)) {
      reject("longitude out of range");
      continue;
    }
    record.latitude = *lat;
    record.longitude = *lon;

    record.region = std::string(io::trim(json_string(object, schema.region)));
    if (record.region.empty()) {
      const auto city = json_string(object, schema.city);
      const auto state = json_string(object, schema.state);
      if (mapping == nullptr) {
        reject("missing region");
        continue;
      }
      auto label = mapping->lookup(city, state);
      if (!label) {
        reject("unmapped city: " + city + ", " + state);
        continue;
      }
      record.region = std::move(*label);
    }
    record.categories = json_categories(object, schema.categories);
    result.records.push_back(std::move(record));
  }
  if (source.bad()) throw InputError("read error in POI source");
  return result;
}

IngestResult load_pois(const std::filesystem::path& path, const FieldSchema& schema,
                       const RegionMapping* mapping) {
  auto in = io::open_input(path);
  return load_pois(in, schema, mapping);
}

void write_records(std::ostream& out, std::span<const PoiRecord> records) {
  for (const auto& r : records) {
    out << sanitize(r.region, '\t', ' ') << '\t' << io::format_double(r.latitude) << '\t'
        << io::format_double(r.longitude) << '\t';
    for (std::size_t i = 0; i < r.categories.size(); ++i) {
      if (i > 0) out << '|';
      out << sanitize(r.categories[i], '|', '/');
    }
    out << '\t' << sanitize(r.name, '\t', ' ') << '\n';
  }
}

std::vector<PoiRecord> read_records(std::istream& in) {
  std::vector<PoiRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto fields = io::split(line, '\t');
    if (fields.size() != 5) {
      throw InputError("corpus line " + std::to_string(number) + ": expected 5 fields");
    }
    PoiRecord r;
    r.region = fields[0];
    r.latitude = io::parse_double(fields[1], "latitude");
    r.longitude = io::parse_double(fields[2], "longitude");
    if (!fields[3].empty()) r.categories = io::split(fields[3], '|');
    r.name = fields[4];
    records.push_back(std::move(r));
  }
  return records;
}

TokenizedName tokenize(std::string_view name) {
  TokenizedName out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.tokens.push_back(std::move(current));
      current.clear();
    }
  };
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(name.data());
  const auto length = static_cast<std::int32_t>(name.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (is_separator(c)) {
      flush();
      continue;
    }
    const UChar32 lower = u_tolower(c);
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, lower);
    current.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  flush();
  out.degenerate = out.tokens.empty();
  return out;
}

std::size_t RegionCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.tokens.size();
  return n;
}

RegionCorpora partition_by_region(std::span<const PoiRecord> records, bool dedup) {
  RegionCorpora corpora;
  std::map<std::string, std::set<std::vector<std::string>>> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    auto& corpus = corpora[record.region];
    if (corpus.region.empty()) {
      corpus.region = record.region;
      corpus.dedup_applied = dedup;
    }
    auto doc = tokenize(record.name);
    doc.source = i;
    if (dedup && !seen[record.region].insert(doc.tokens).second) continue;
    corpus.documents.push_back(std::move(doc));
  }
  return corpora;
}

TypedSubsetSelection typed_subsets(std::span<const PoiRecord> records, std::size_t min_count,
                                   const std::set<std::string>& required_regions, bool dedup) {
  if (min_count < 1) throw InputError("min_count must be at least 1");

  std::set<std::string> regions = required_regions;
  if (regions.empty()) {
    for (const auto& r : records) regions.insert(r.region);
  }

  // category -> region -> record indices
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> members;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!regions.contains(records[i].region)) continue;
    for (const auto& category : records[i].categories) {
      members[category][records[i].region].push_back(i);
    }
  }

  TypedSubsetSelection selection;
  for (const auto& [category, by_region] : members) {
    const bool qualifies = std::all_of(regions.begin(), regions.end(), [&](const auto& region) {
      const auto it = by_region.find(region);
      return it != by_region.end() && it->second.size() >= min_count;
    });
    if (!qualifies) continue;
    selection.categories.push_back(category);
    for (const auto& region : regions) {
      TypedSubset subset{region, category, {}};
      std::set<std::vector<std::string>> seen;
      for (const auto index : by_region.at(region)) {
        auto doc = tokenize(records[index].name);
        doc.source = index;
        if (dedup && !seen.insert(doc.tokens).second) continue;
        subset.documents.push_back(std::move(doc));
      }
      selection.subsets.push_back(std::move(subset));
    }
  }
  if (selection.categories.empty()) {
    selection.warnings.push_back("no category has at least " + std::to_string(min_count) +
                                 " POIs in every required region");
  }
  return selection;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const RegionCorpora& corpora) {
  std::set<std::string> terms;
  for (const auto& [region, corpus] : corpora) {
    for (const auto& doc : corpus.documents) terms.insert(doc.tokens.begin(), doc.tokens.end());
  }
  if (terms.empty()) throw InputError("empty corpus");
  return Vocabulary(std::vector<std::string>(terms.begin(), terms.end()));
}

}  // namespace poiname
