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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lexalign/error.hpp"
#include "lexalign/geo.hpp"
#include "lexalign/random.hpp"

namespace lexalign {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

constexpr GeoPoint kParis{48.8566, 2.3522};
constexpr GeoPoint kBerlin{52.52, 13.405};
constexpr GeoPoint kMadrid{40.4168, -3.7038};
constexpr GeoPoint kStockholm{59.3293, 18.0686};
constexpr GeoPoint kLisbon{38.7223, -9.1393};
constexpr GeoPoint kHelsinki{60.1699, 24.9384};

TEST(Geodesic, SamePointIsZero) {
  EXPECT_EQ(geodesic_distance(kParis, kParis), 0.0);
  EXPECT_EQ(geodesic_distance({90, 0}, {90, 0}), 0.0);
}

TEST(Geodesic, QuarterEquator) {
  const auto r = geodesic_inverse({0, 0}, {0, 90});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.kilometers, 10018.754171, 0.5);
}

TEST(Geodesic, CapitalPairs) {
  struct Case {
    GeoPoint a, b;
    double km;
  };
  for (const auto& c : {Case{kParis, kBerlin, 879.699316}, Case{kMadrid, kStockholm, 2596.195497},
                        Case{kLisbon, kHelsinki, 3365.529207}}) {
    EXPECT_NEAR(geodesic_distance(c.a, c.b), c.km, 0.001 * c.km);
    // Haversine stays within half a percent of the ellipsoid.
    EXPECT_NEAR(great_circle_distance(c.a, c.b), c.km, 0.005 * c.km);
  }
}

GeoPoint random_point(Rng& rng) {
  return {-60.0 + 120.0 * rng.uniform(), -60.0 + 120.0 * rng.uniform()};
}

TEST(Geodesic, SymmetricAndTriangular) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const GeoPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const double ab = geodesic_distance(a, b);
    EXPECT_NEAR(ab, geodesic_distance(b, a), 1e-6);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, geodesic_distance(a, c) + geodesic_distance(c, b) + 1e-6);
  }
}

TEST(Geodesic, WrapsAcrossTheAntimeridian) {
  const auto wrapped = geodesic_inverse({10, 170}, {-5, -175});
  const auto shifted = geodesic_inverse({10, -10}, {-5, 5});
  EXPECT_TRUE(wrapped.converged);
  EXPECT_NEAR(wrapped.kilometers, shifted.kilometers, 1e-6);
  const auto far = geodesic_inverse({20, -170}, {-30, 100});
  EXPECT_TRUE(far.converged);
  EXPECT_NEAR(far.kilometers, geodesic_distance({20, 10}, {-30, -80}), 1e-6);
}

TEST(Geodesic, WholeGlobeIsSymmetricAndTriangular) {
  Rng rng(22);
  auto point = [&] {
    return GeoPoint{-90.0 + 180.0 * rng.uniform(), -180.0 + 360.0 * rng.uniform()};
  };
  std::size_t fallbacks = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const GeoPoint a = point(), b = point(), c = point();
    fallbacks += !geodesic_inverse(a, b).converged;
    const double ab = geodesic_distance(a, b);
    EXPECT_NEAR(ab, geodesic_distance(b, a), 1e-6);
    if (geodesic_inverse(a, c).converged && geodesic_inverse(c, b).converged &&
        geodesic_inverse(a, b).converged) {
      EXPECT_LE(ab, geodesic_distance(a, c) + geodesic_distance(c, b) + 1e-6);
    }
  }
  EXPECT_LT(fallbacks, 10u);
}

TEST(Geodesic, InvalidCoordinates) {
  EXPECT_EQ(code_of([] { geodesic_distance({91, 0}, {0, 0}); }), ErrorCode::kInvalidCoordinate);
  EXPECT_EQ(code_of([] { geodesic_distance({0, 0}, {0, -181}); }),
            ErrorCode::kInvalidCoordinate);
  EXPECT_EQ(code_of([] {
              geodesic_distance({std::numeric_limits<double>::quiet_NaN(), 0}, {0, 0});
            }),
            ErrorCode::kInvalidCoordinate);
  EXPECT_EQ(code_of([] { great_circle_distance({0, 0}, {-90.5, 0}); }),
            ErrorCode::kInvalidCoordinate);
}

TEST(Geodesic, NearAntipodalFallsBackToGreatCircle) {
  const GeoPoint a{0, 0};
  const GeoPoint b{0.5, 179.7};
  const auto r = geodesic_inverse(a, b);
  EXPECT_FALSE(r.converged);
  EXPECT_DOUBLE_EQ(r.kilometers, great_circle_distance(a, b));
  EXPECT_GT(r.kilometers, 19900.0);
}

using Traits = std::vector<std::optional<std::string>>;

TEST(Cultural, Examples) {
  const Traits a{"x", "y", "z"};
  EXPECT_EQ(cultural_distance(a, a), 0.0);
  const Traits b{"p", "q", "r"};
  EXPECT_EQ(cultural_distance(a, b), 1.0);
  const Traits c{"x", std::nullopt, "r"};
  EXPECT_EQ(cultural_distance(a, c), 0.5);
}

TEST(Cultural, HalfOfNinetyTwoTraits) {
  Traits a, b;
  for (int i = 0; i < 92; ++i) {
    a.emplace_back("v" + std::to_string(i));
    b.emplace_back(i % 2 == 0 ? "v" + std::to_string(i) : "other");
  }
  EXPECT_DOUBLE_EQ(cultural_distance(a, b), 0.5);
  EXPECT_DOUBLE_EQ(cultural_distance(b, a), 0.5);
}

TEST(Cultural, Errors) {
  const Traits a{"x", std::nullopt};
  const Traits b{std::nullopt, "y"};
  EXPECT_EQ(code_of([&] { cultural_distance(a, b); }), ErrorCode::kNoComparableTraits);
  const Traits c{"x"};
  EXPECT_EQ(code_of([&] { cultural_distance(a, c); }), ErrorCode::kLengthMismatch);
}

}  // namespace
}  // namespace lexalign
