#include "poiname/geo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "poiname/error.hpp"

namespace poiname {

GeoPoint::GeoPoint(double latitude, double longitude) : latitude_(latitude), longitude_(longitude) {
  if (!(latitude >= -90.0 && latitude <= 90.0)) {
    throw InputError("latitude out of range: " + std::to_string(latitude));
  }
  if (!(longitude >= -180.0 && longitude <= 180.0)) {
    throw InputError("longitude out of range: " + std::to_string(longitude));
  }
}

GeoPoint region_centroid(std::span<const GeoPoint> points) {
  if (points.empty()) throw InputError("centroid of an empty point set");
  // running mean: stays exact when every point is the same
  double lat = 0.0;
  double lon = 0.0;
  double k = 0.0;
  for (const auto& p : points) {
    k += 1.0;
    lat += (p.latitude() - lat) / k;
    lon += (p.longitude() - lon) / k;
  }
  return {lat, lon};
}

GeoPoint region_centroid(std::span<const PoiRecord> pois) {
  std::vector<GeoPoint> points;
  points.reserve(pois.size());
  for (const auto& p : pois) points.emplace_back(p.latitude, p.longitude);
  return region_centroid(std::span<const GeoPoint>(points));
}

std::map<std::string, GeoPoint> region_centroids(std::span<const PoiRecord> pois) {
  std::map<std::string, std::vector<GeoPoint>> grouped;
  for (const auto& p : pois) grouped[p.region].emplace_back(p.latitude, p.longitude);
  std::map<std::string, GeoPoint> out;
  for (const auto& [region, points] : grouped) {
    out.emplace(region, region_centroid(std::span<const GeoPoint>(points)));
  }
  return out;
}

double vincenty_distance(const GeoPoint& first, const GeoPoint& second) {
  // evaluate in a canonical argument order so d(a, b) == d(b, a) bit for bit
  const bool swap = std::pair(second.latitude(), second.longitude()) <
                    std::pair(first.latitude(), first.longitude());
  const GeoPoint& p1 = swap ? second : first;
  const GeoPoint& p2 = swap ? first : second;

  constexpr double a = wgs84::kSemiMajorAxis;
  constexpr double f = wgs84::kFlattening;
  constexpr double b = (1.0 - f) * a;
  constexpr double deg = std::numbers::pi / 180.0;

  const double L = (p2.longitude() - p1.longitude()) * deg;
  const double U1 = std::atan((1.0 - f) * std::tan(p1.latitude() * deg));
  const double U2 = std::atan((1.0 - f) * std::tan(p2.latitude() * deg));
  const double sinU1 = std::sin(U1);
  const double cosU1 = std::cos(U1);
  const double sinU2 = std::sin(U2);
  const double cosU2 = std::cos(U2);

  double lambda = L;
  double sin_sigma = 0.0;
  double cos_sigma = 0.0;
  double sigma = 0.0;
  double cos_sq_alpha = 0.0;
  double cos_2sigma_m = 0.0;
  bool converged = false;
  for (int iteration = 0; iteration < 200; ++iteration) {
    const double sin_lambda = std::sin(lambda);
    const double cos_lambda = std::cos(lambda);
    const double t1 = cosU2 * sin_lambda;
    const double t2 = cosU1 * sinU2 - sinU1 * cosU2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) return 0.0;  // coincident points
    cos_sigma = sinU1 * sinU2 + cosU1 * cosU2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cosU1 * cosU2 * sin_lambda / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    // equatorial line: cos^2(alpha) == 0
    cos_2sigma_m = cos_sq_alpha != 0.0 ? cos_sigma - 2.0 * sinU1 * sinU2 / cos_sq_alpha : 0.0;
    const double C = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha));
    const double previous = lambda;
    lambda = L + (1.0 - C) * f * sin_alpha *
                     (sigma + C * sin_sigma *
                                  (cos_2sigma_m + C * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda) > std::numbers::pi + 1e-9) break;
    if (std::abs(lambda - previous) < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ComputeError("vincenty did not converge");

  const double u_sq = cos_sq_alpha * (a * a - b * b) / (b * b);
  const double A = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double B = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double c2 = cos_2sigma_m * cos_2sigma_m;
  const double delta_sigma =
      B * sin_sigma *
      (cos_2sigma_m + B / 4.0 *
                          (cos_sigma * (-1.0 + 2.0 * c2) -
                           B / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) * (-3.0 + 4.0 * c2)));
  return b * A * (sigma - delta_sigma);
}

DistanceMatrix distance_matrix(const std::map<std::string, GeoPoint>& centroids) {
  if (centroids.size() < 2) throw InputError("distance matrix needs at least two regions");
  std::vector<std::string> labels;
  std::vector<GeoPoint> points;
  for (const auto& [region, point] : centroids) {
    labels.push_back(region);
    points.push_back(point);
  }
  DistanceMatrix m(std::move(labels));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = vincenty_distance(points[i], points[j]);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  }
  return m;
}

}  // namespace poiname
