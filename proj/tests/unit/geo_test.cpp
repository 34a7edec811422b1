#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "poiname/error.hpp"
#include "poiname/geo.hpp"

namespace poiname {
namespace {

TEST(GeoPoint, RejectsOutOfRange) {
  EXPECT_NO_THROW(GeoPoint(90, 180));
  EXPECT_NO_THROW(GeoPoint(-90, -180));
  EXPECT_THROW(GeoPoint(90.0001, 0), InputError);
  EXPECT_THROW(GeoPoint(0, -180.5), InputError);
  EXPECT_THROW(GeoPoint(std::nan(""), 0), InputError);
}

TEST(RegionCentroid, ArithmeticMean) {
  const std::vector<GeoPoint> two = {{10, 20}, {20, 40}};
  EXPECT_EQ(region_centroid(two), GeoPoint(15, 30));
  const std::vector<GeoPoint> one = {{33.4, -112.1}};
  EXPECT_EQ(region_centroid(one), GeoPoint(33.4, -112.1));
  const std::vector<GeoPoint> copies(100, GeoPoint(36.17, -115.14));
  const auto c = region_centroid(copies);
  EXPECT_DOUBLE_EQ(c.latitude(), 36.17);
  EXPECT_DOUBLE_EQ(c.longitude(), -115.14);
  EXPECT_THROW(region_centroid(std::span<const GeoPoint>{}), InputError);
}

TEST(RegionCentroid, FromRecordsPerRegion) {
  const std::vector<PoiRecord> records = {testing::poi("a", "x", 10, 20), testing::poi("b", "x", 20, 40),
                                          testing::poi("c", "y", -5, 5)};
  const auto centroids = region_centroids(records);
  ASSERT_EQ(centroids.size(), 2u);
  EXPECT_EQ(centroids.at("x"), GeoPoint(15, 30));
  EXPECT_EQ(centroids.at("y"), GeoPoint(-5, 5));
  EXPECT_EQ(region_centroid(std::span(records).first(2)), GeoPoint(15, 30));
  EXPECT_THROW(region_centroid(std::span<const PoiRecord>{}), InputError);
}

TEST(Vincenty, ReferenceValues) {
  EXPECT_EQ(vincenty_distance({40, -100}, {40, -100}), 0.0);
  EXPECT_NEAR(vincenty_distance({0, 0}, {0, 1}), 111319.491, 0.01);
  EXPECT_NEAR(vincenty_distance({0, 0}, {1, 0}), 110574.389, 0.01);
}

TEST(Vincenty, EquatorialDegreeExceedsMeridionalDegree) {
  EXPECT_GT(vincenty_distance({0, 0}, {0, 1}), vincenty_distance({0, 0}, {1, 0}));
}

TEST(Vincenty, AgreesWithIndependentGeodesicReference) {
  std::ifstream in(std::string(POINAME_FIXTURE_DIR) + "/geodesic_reference.tsv");
  ASSERT_TRUE(in);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    double lat1, lon1, lat2, lon2, expected;
    fields >> lat1 >> lon1 >> lat2 >> lon2 >> expected;
    EXPECT_NEAR(vincenty_distance({lat1, lon1}, {lat2, lon2}), expected, 1e-3) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 50);
}

TEST(Vincenty, ExactlySymmetric) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> lat(24.5, 49.4), lon(-124.8, -66.9);
  for (int i = 0; i < 500; ++i) {
    const GeoPoint a(lat(gen), lon(gen)), b(lat(gen), lon(gen));
    EXPECT_EQ(vincenty_distance(a, b), vincenty_distance(b, a));
    EXPECT_EQ(vincenty_distance(a, a), 0.0);
    EXPECT_GT(vincenty_distance(a, b), 0.0);
  }
}

TEST(Vincenty, NearAntipodalFailsLoudly) {
  EXPECT_THROW(vincenty_distance({0, 0}, {0.5, 179.7}), ComputeError);
}

std::map<std::string, GeoPoint> seven_metros() {
  return {{"charlotte", {35.23, -80.84}},  {"cleveland", {41.50, -81.69}},
          {"las vegas", {36.17, -115.14}}, {"madison", {43.07, -89.40}},
          {"phoenix", {33.45, -112.07}},   {"pittsburgh", {40.44, -79.99}},
          {"urbana", {40.11, -88.21}}};
}

TEST(DistanceMatrix, SevenRegionsGiveTwentyOnePairs) {
  const auto m = distance_matrix(seven_metros());
  ASSERT_EQ(m.size(), 7u);
  EXPECT_TRUE(m.is_symmetric());
  std::set<double> distinct;
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(m.at(i, i), 0.0);
    for (std::size_t j = i + 1; j < 7; ++j) {
      EXPECT_EQ(m.at(i, j), m.at(j, i));
      EXPECT_GT(m.at(i, j), 0.0);
      distinct.insert(m.at(i, j));
    }
  }
  EXPECT_EQ(distinct.size(), 21u);
  EXPECT_EQ(m.labels().front(), "charlotte");
}

TEST(DistanceMatrix, DuplicateCentroidGivesZero) {
  const auto m = distance_matrix({{"a", {36, -115}}, {"b", {36, -115}}, {"c", {40, -80}}});
  EXPECT_EQ(m.at(0, 1), 0.0);
  EXPECT_GT(m.at(0, 2), 0.0);
}

TEST(DistanceMatrix, NeedsTwoRegions) {
  EXPECT_THROW(distance_matrix({{"a", {1, 1}}}), InputError);
  EXPECT_THROW(distance_matrix({}), InputError);
}

}  // namespace
}  // namespace poiname
