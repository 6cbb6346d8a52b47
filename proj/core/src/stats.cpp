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

#include "lexalign/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "lexalign/error.hpp"
#include "lexalign/random.hpp"

namespace lexalign {

namespace {

constexpr double kOvershoot = 1e-12;

void check_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} vs {}", x.size(), y.size()));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("correlation needs at least 3 points, got {}", x.size()));
  }
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw Error(ErrorCode::kConstantInput, "correlation undefined for constant input");
  }
}

double bounded(double r) {
  if (!std::isfinite(r) || std::abs(r) > 1.0 + kOvershoot) {
    throw Error(ErrorCode::kRangeViolation, fmt::format("correlation {} out of range", r));
  }
  return std::clamp(r, -1.0, 1.0);
}

double pearson_unchecked(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kConstantInput, "zero variance");
  }
  return bounded(sxy / std::sqrt(sxx * syy));
}

// Number of strict inversions in `v`, sorting it in the process.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = count_inversions(v, scratch, lo, mid) +
                        count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return swaps;
}

struct TieSums {
  double pairs = 0.0;  // sum t(t-1)/2
  double v0 = 0.0;     // sum t(t-1)(2t+5)
  double v1 = 0.0;     // sum t(t-1)
  double v2 = 0.0;     // sum t(t-1)(t-2)
};

// Tie statistics of an ascending-sorted sequence.
TieSums tie_sums(std::span<const double> sorted) {
  TieSums sums;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    sums.pairs += t * (t - 1) / 2;
    sums.v0 += t * (t - 1) * (2 * t + 5);
    sums.v1 += t * (t - 1);
    sums.v2 += t * (t - 1) * (t - 2);
    i = j;
  }
  return sums;
}

struct KendallParts {
  double tau;
  double s;
  TieSums x_ties;
  TieSums y_ties;
};

KendallParts kendall_parts(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  // Joint ties: runs equal in both coordinates.
  double joint = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    const double t = static_cast<double>(j - i);
    joint += t * (t - 1) / 2;
    i = j;
  }
  KendallParts parts{};
  parts.x_ties = tie_sums(xs);
  std::vector<double> scratch(n);
  const auto swaps = static_cast<double>(count_inversions(ys, scratch, 0, n));
  parts.y_ties = tie_sums(ys);  // ys is sorted now
  const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  parts.s = n0 - parts.x_ties.pairs - parts.y_ties.pairs + joint - 2 * swaps;
  const double denom = (n0 - parts.x_ties.pairs) * (n0 - parts.y_ties.pairs);
  if (denom <= 0.0) throw Error(ErrorCode::kConstantInput, "kendall tau undefined");
  parts.tau = bounded(parts.s / std::sqrt(denom));
  return parts;
}

}  // namespace

std::string_view to_string(CorrelationMethod method) noexcept {
  switch (method) {
    case CorrelationMethod::kPearson: return "pearson";
    case CorrelationMethod::kSpearman: return "spearman";
    case CorrelationMethod::kKendall: return "kendall";
  }
  return "pearson";
}

CorrelationMethod parse_correlation(std::string_view text) {
  if (text == "pearson") return CorrelationMethod::kPearson;
  if (text == "spearman") return CorrelationMethod::kSpearman;
  if (text == "kendall") return CorrelationMethod::kKendall;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown correlation '{}'", text));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientSamples, "mean of empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share the mean 1-based rank.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  return pearson_unchecked(x, y);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson_unchecked(rx, ry);
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  return kendall_parts(x, y).tau;
}

double correlation(CorrelationMethod method, std::span<const double> x,
                   std::span<const double> y) {
  switch (method) {
    case CorrelationMethod::kPearson: return pearson(x, y);
    case CorrelationMethod::kSpearman: return spearman(x, y);
    case CorrelationMethod::kKendall: return kendall_tau(x, y);
  }
  return pearson(x, y);
}

double t_test_p_value(double r, double df) {
  if (df <= 0.0) return 1.0;
  const double one_minus = 1.0 - r * r;
  if (one_minus <= 0.0) return 0.0;
  const double t = std::abs(r) * std::sqrt(df / one_minus);
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

CorrelationResult correlate(CorrelationMethod method, std::span<const double> x,
                            std::span<const double> y) {
  CorrelationResult result;
  result.n = x.size();
  if (method == CorrelationMethod::kKendall) {
    check_inputs(x, y);
    const KendallParts parts = kendall_parts(x, y);
    result.r = parts.tau;
    const double n = static_cast<double>(x.size());
    const double variance =
        (n * (n - 1) * (2 * n + 5) - parts.x_ties.v0 - parts.y_ties.v0) / 18.0 +
        parts.x_ties.v1 * parts.y_ties.v1 / (2.0 * n * (n - 1)) +
        parts.x_ties.v2 * parts.y_ties.v2 / (9.0 * n * (n - 1) * (n - 2));
    result.p = variance > 0.0
                   ? std::erfc(std::abs(parts.s) / std::sqrt(variance) / std::sqrt(2.0))
                   : 1.0;
    return result;
  }
  result.r = correlation(method, x, y);
  result.p = t_test_p_value(result.r, static_cast<double>(x.size()) - 2.0);
  return result;
}

double permutation_p_value(CorrelationMethod method, std::span<const double> x,
                           std::span<const double> y, std::size_t permutations,
                           std::uint64_t seed) {
  const double observed = std::abs(correlation(method, x, y));
  Rng rng(seed);
  std::vector<double> shuffled(y.begin(), y.end());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < permutations; ++i) {
    rng.shuffle(shuffled);
    if (std::abs(correlation(method, x, shuffled)) >= observed - kOvershoot) ++hits;
  }
  return static_cast<double>(hits + 1) / static_cast<double>(permutations + 1);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::kInsufficientSamples, "quantile of empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace lexalign
