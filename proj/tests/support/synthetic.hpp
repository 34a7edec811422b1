#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace poiname::testing {

struct SyntheticRegion {
  std::string name;
  double latitude;
  double longitude;
};

inline const std::vector<SyntheticRegion>& synthetic_regions() {
  static const std::vector<SyntheticRegion> regions = {{"alpha", 33.45, -112.07},
                                                       {"bravo", 36.17, -115.14},
                                                       {"charlie", 40.44, -79.99},
                                                       {"delta", 41.50, -81.69},
                                                       {"echo", 35.23, -80.84}};
  return regions;
}

/// Newline-delimited JSON records carrying an explicit region field.
/// Each region draws from a shared word pool plus a band of local words that
/// overlaps with the next region's band.
inline void write_synthetic_dataset(const std::filesystem::path& path, std::size_t per_region,
                                    std::uint64_t seed = 7) {
  static const std::vector<std::string> shared = {"the", "and", "of", "center", "pizza", "grill",
                                                  "spa", "bar", "auto", "restaurant", "cafe", "market"};
  static const std::vector<std::string> local = {"saguaro", "cactus", "mesa",  "sonoran", "desert",
                                                 "neon",    "casino", "strip", "steel",   "river",
                                                 "bridge",  "lake",   "erie",  "buckeye", "queen",
                                                 "crown",   "pine",   "magnolia"};
  static const std::vector<std::string> categories = {"Restaurants", "Pizza", "Auto Repair", "Bars",
                                                      "Hotels"};
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::ofstream out(path, std::ios::binary);
  std::size_t id = 0;
  const auto& regions = synthetic_regions();
  for (std::size_t r = 0; r < regions.size(); ++r) {
    for (std::size_t i = 0; i < per_region; ++i) {
      std::string name;
      const auto words = 1 + gen() % 3;
      for (std::size_t w = 0; w < words; ++w) {
        const bool use_local = gen() % 10 < 4;
        const auto& word = use_local ? local[(r * 3 + gen() % 6) % local.size()] : shared[gen() % shared.size()];
        name += (w ? " " : "") + word;
      }
      const auto first = gen() % categories.size();
      std::string cats = "\"" + categories[first] + "\"";
      if (gen() % 2) cats += ", \"" + categories[(first + 1) % categories.size()] + "\"";
      out << "{\"business_id\": \"s" << id++ << "\", \"name\": \"" << name << "\", \"region\": \""
          << regions[r].name << "\", \"latitude\": " << regions[r].latitude + jitter(gen)
          << ", \"longitude\": " << regions[r].longitude + jitter(gen) << ", \"categories\": [" << cats
          << "]}\n";
    }
  }
}

}  // namespace poiname::testing
