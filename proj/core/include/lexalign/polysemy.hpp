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

#ifndef LEXALIGN_POLYSEMY_HPP_
#define LEXALIGN_POLYSEMY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/embed_store.hpp"

namespace lexalign {

/// Mean cosine over ordered pairs i != j. Throws kCloudTooSmall.
double self_similarity(const PointCloud& cloud);

struct GmmConfig {
  std::size_t max_components = 10;
  std::size_t repeats = 10;
  std::size_t max_iterations = 200;
  double tolerance = 1e-6;  // relative log-likelihood change
  double variance_floor = 1e-6;
  std::uint64_t seed = 0;
};

struct GmmFit {
  std::size_t components = 0;
  double log_likelihood = 0.0;
  double bic = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// One EM fit of a diagonal-covariance mixture with k-means++ seeding.
GmmFit fit_diagonal_gmm(const PointCloud& cloud, std::size_t components,
                        std::uint64_t seed, const GmmConfig& config = {});

/// Knee of a BIC curve (index 0 holds one component): the count m in
/// 1..size-1 maximising gain(m) - gain(m+1), gain(m) = bic[m-2] - bic[m-1]
/// and gain(1) = 0. Ties go to the smaller count.
std::size_t bic_elbow(std::span<const double> bic);

struct SenseCount {
  std::size_t count = 1;
  /// Per repeat: elected count, or 0 when the repeat had a non-converged fit.
  std::vector<std::size_t> votes;
  /// Per repeat: elbow count of the BIC curve, converged or not.
  std::vector<std::size_t> elected;
  std::vector<std::vector<double>> bic_curves;
  std::size_t excluded = 0;
  /// Every repeat was excluded and the mode was taken over all of them.
  bool fallback = false;
};

/// Modal elbow count over `repeats` seeded repeats (ties to the smaller
/// count). Throws kCloudTooSmall when the cloud has fewer points than
/// `max_components`.
SenseCount gmm_sense_count(const PointCloud& cloud, const GmmConfig& config = {});

enum class PolysemyMeasure { kSelfSim, kGmmSenses };
std::string_view to_string(PolysemyMeasure measure) noexcept;
/// "self_sim" or "gmm_senses"; throws kInvalidArgument.
PolysemyMeasure parse_polysemy_measure(std::string_view text);

struct LanguagePolysemy {
  std::string language;
  double mean = 0.0;
  std::size_t words = 0;
  std::size_t excluded = 0;
};

struct PolysemyPairScore {
  double value = 0.0;
  LanguagePolysemy first;
  LanguagePolysemy second;
};

/// Per-word measure over every cloud of `store`; failing words are
/// excluded and counted. Throws kInsufficientSamples when none succeed.
LanguagePolysemy language_polysemy(const PointCloudStore& store, PolysemyMeasure measure,
                                   const GmmConfig& config = {}, std::size_t jobs = 1);

/// Mean of the two language means.
PolysemyPairScore polysemy_pair_score(const PointCloudStore& first,
                                      const PointCloudStore& second,
                                      PolysemyMeasure measure, const GmmConfig& config = {},
                                      std::size_t jobs = 1);

}  // namespace lexalign

#endif  // LEXALIGN_POLYSEMY_HPP_
