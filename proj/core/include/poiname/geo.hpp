#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "poiname/corpus.hpp"
#include "poiname/matrix.hpp"

namespace poiname {

/// WGS-84 coordinates in degrees. The constructor rejects out-of-range values.
class GeoPoint {
 public:
  GeoPoint(double latitude, double longitude);

  double latitude() const { return latitude_; }
  double longitude() const { return longitude_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double latitude_;
  double longitude_;
};

namespace wgs84 {
inline constexpr double kSemiMajorAxis = 6378137.0;
inline constexpr double kFlattening = 1.0 / 298.257223563;
}  // namespace wgs84

/// Arithmetic mean of latitudes and of longitudes. Throws InputError when empty.
GeoPoint region_centroid(std::span<const PoiRecord> pois);
GeoPoint region_centroid(std::span<const GeoPoint> points);

/// Centroid per region label.
std::map<std::string, GeoPoint> region_centroids(std::span<const PoiRecord> pois);

/// Inverse geodesic distance in meters on the WGS-84 ellipsoid using Vincenty's
/// iteration (|dλ| < 1e-12, at most 200 iterations).
/// Throws ComputeError("vincenty did not converge") for near-antipodal points.
double vincenty_distance(const GeoPoint& a, const GeoPoint& b);

class DistanceMatrix : public LabeledMatrix {
 public:
  using LabeledMatrix::LabeledMatrix;
  explicit DistanceMatrix(LabeledMatrix matrix) : LabeledMatrix(std::move(matrix)) {}
};

/// Pairwise distances in meters, regions in map (sorted) order.
/// Throws InputError with fewer than two regions.
DistanceMatrix distance_matrix(const std::map<std::string, GeoPoint>& centroids);

}  // namespace poiname
