// Copyright 2026 The lexalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexalign/geo.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "lexalign/error.hpp"

namespace lexalign {

namespace {

constexpr double kA = 6378137.0;
constexpr double kF = 1.0 / 298.257223563;
constexpr double kB = kA * (1.0 - kF);
constexpr double kMeanRadiusKm = 6371.0088;
constexpr std::size_t kMaxIterations = 200;
constexpr double kTolerance = 1e-12;

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

void check(GeoPoint p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 || p.lat > 90.0 ||
      p.lon < -180.0 || p.lon > 180.0) {
    throw Error(ErrorCode::kInvalidCoordinate,
                fmt::format("({}, {}) is not a valid coordinate", p.lat, p.lon));
  }
}

}  // namespace

double great_circle_distance(GeoPoint a, GeoPoint b) {
  check(a);
  check(b);
  const double dlat = radians(b.lat - a.lat);
  const double dlon = radians(b.lon - a.lon);
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(radians(a.lat)) * std::cos(radians(b.lat)) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kMeanRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

GeodesicResult geodesic_inverse(GeoPoint a, GeoPoint b) {
  check(a);
  check(b);
  GeodesicResult result;
  if (a.lat == b.lat && a.lon == b.lon) return result;

  const double u1 = std::atan((1.0 - kF) * std::tan(radians(a.lat)));
  const double u2 = std::atan((1.0 - kF) * std::tan(radians(b.lat)));
  const double l = std::remainder(radians(b.lon - a.lon), 2.0 * std::numbers::pi);
  const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
  const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

  double lambda = l;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double cos_sq_alpha = 0.0, cos_2sigma_m = 0.0;
  bool converged = false;
  std::size_t iter = 0;
  while (iter < kMaxIterations) {
    ++iter;
    const double sin_lambda = std::sin(lambda), cos_lambda = std::cos(lambda);
    const double t1 = cos_u2 * sin_lambda;
    const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) {
      result.iterations = iter;
      return result;  // coincident points
    }
    cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    cos_2sigma_m = cos_sq_alpha != 0.0 ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha : 0.0;
    const double c = kF / 16.0 * cos_sq_alpha * (4.0 + kF * (4.0 - 3.0 * cos_sq_alpha));
    const double previous = lambda;
    lambda = l + (1.0 - c) * kF * sin_alpha *
                     (sigma + c * sin_sigma *
                                  (cos_2sigma_m +
                                   c * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda - previous) < kTolerance) {
      converged = true;
      break;
    }
    if (std::abs(lambda) > std::numbers::pi) break;
  }
  result.iterations = iter;
  if (!converged) {
    result.converged = false;
    result.kilometers = great_circle_distance(a, b);
    return result;
  }
  const double u_sq = cos_sq_alpha * (kA * kA - kB * kB) / (kB * kB);
  const double big_a =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      big_b * sin_sigma *
      (cos_2sigma_m +
       big_b / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            big_b / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  result.kilometers = kB * big_a * (sigma - delta_sigma) / 1000.0;
  return result;
}

double geodesic_distance(GeoPoint a, GeoPoint b) { return geodesic_inverse(a, b).kilometers; }

double cultural_distance(std::span<const std::optional<std::string>> a,
                         std::span<const std::optional<std::string>> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("trait vectors of length {} and {}", a.size(), b.size()));
  }
  std::size_t present = 0, matching = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i] || !b[i]) continue;
    ++present;
    if (*a[i] == *b[i]) ++matching;
  }
  if (present == 0) throw Error(ErrorCode::kNoComparableTraits, "no trait present on both sides");
  return 1.0 - static_cast<double>(matching) / static_cast<double>(present);
}

}  // namespace lexalign
