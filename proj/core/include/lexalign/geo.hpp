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

#ifndef LEXALIGN_GEO_HPP_
#define LEXALIGN_GEO_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "lexalign/analysis.hpp"

namespace lexalign {

struct GeodesicResult {
  double kilometers = 0.0;
  bool converged = true;  // false: great-circle fallback was used
  std::size_t iterations = 0;
};

/// Iterative inverse solution on the WGS84 ellipsoid. Throws
/// kInvalidCoordinate.
GeodesicResult geodesic_inverse(GeoPoint a, GeoPoint b);
double geodesic_distance(GeoPoint a, GeoPoint b);
/// Haversine on the mean Earth radius.
double great_circle_distance(GeoPoint a, GeoPoint b);

/// 1 - matching / mutually-present traits. Throws kLengthMismatch,
/// kNoComparableTraits.
double cultural_distance(std::span<const std::optional<std::string>> a,
                         std::span<const std::optional<std::string>> b);

}  // namespace lexalign

#endif  // LEXALIGN_GEO_HPP_
