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

#ifndef LEXALIGN_STATS_HPP_
#define LEXALIGN_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lexalign {

enum class CorrelationMethod { kPearson, kSpearman, kKendall };

std::string_view to_string(CorrelationMethod method) noexcept;
/// Accepts "pearson", "spearman", "kendall"; throws kInvalidArgument.
CorrelationMethod parse_correlation(std::string_view text);

struct CorrelationResult {
  double r = 0.0;
  double p = 1.0;  // two-tailed
  std::size_t n = 0;
};

// All correlations require equal lengths >= 3 (kLengthMismatch,
// kInsufficientSamples) and non-constant inputs (kConstantInput). Results
// are clamped to [-1, 1] only against rounding overshoot; a larger
// excursion raises kRangeViolation.

/// Sample Pearson r.
double pearson(std::span<const double> x, std::span<const double> y);
/// Pearson r of fractional (average-tie) ranks.
double spearman(std::span<const double> x, std::span<const double> y);
/// Kendall tau-b, O(n log n).
double kendall_tau(std::span<const double> x, std::span<const double> y);

double correlation(CorrelationMethod method, std::span<const double> x,
                   std::span<const double> y);

/// r with its two-tailed p-value: Student t with n-2 df for Pearson and
/// Spearman, the tie-corrected normal approximation for Kendall.
CorrelationResult correlate(CorrelationMethod method, std::span<const double> x,
                            std::span<const double> y);

/// Two-tailed p of a Pearson-type r from a t statistic with `df` degrees of
/// freedom.
double t_test_p_value(double r, double df);

/// Two-tailed permutation p-value for small samples: the share of seeded
/// shuffles of `y` whose |r| reaches the observed |r| (add-one smoothed).
double permutation_p_value(CorrelationMethod method, std::span<const double> x,
                           std::span<const double> y, std::size_t permutations,
                           std::uint64_t seed);

/// Fractional ranks (1-based, ties get the mean of their positions).
std::vector<double> fractional_ranks(std::span<const double> values);

double mean(std::span<const double> values);

/// Linear-interpolation quantile of an ascending-sorted sample, q in [0,1].
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace lexalign

#endif  // LEXALIGN_STATS_HPP_
