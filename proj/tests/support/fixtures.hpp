#pragma once

#include <string>
#include <vector>

#include "poiname/corpus.hpp"

namespace poiname::testing {

inline PoiRecord poi(std::string name, std::string region, double lat = 40.0, double lon = -90.0,
                     std::vector<std::string> categories = {}) {
  return PoiRecord{std::move(name), std::move(region), lat, lon, std::move(categories)};
}

/// Corpora straight from token lists: one inner vector per document name.
inline RegionCorpora corpora_from(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& names) {
  std::vector<PoiRecord> records;
  for (const auto& [region, list] : names) {
    for (const auto& name : list) records.push_back(poi(name, region));
  }
  return partition_by_region(records, false);
}

/// Two regions with identical name multisets and one region sharing no term
/// with them.
inline RegionCorpora separation_fixture() {
  const std::vector<std::string> shared = {
      "desert pizza", "canyon grill", "sun valley spa", "desert auto care", "mesa coffee",
      "cactus bar",   "saguaro cafe", "valley dental",  "desert inn",       "sun tacos"};
  const std::vector<std::string> disjoint = {
      "lake fish fry", "harbor pub",      "snow boots",  "river steak house", "pine cabin",
      "north brewery", "ice rink",        "maple diner", "frost barber",      "lake marina"};
  return corpora_from({{"r1", shared}, {"r2", shared}, {"r3", disjoint}});
}

}  // namespace poiname::testing
