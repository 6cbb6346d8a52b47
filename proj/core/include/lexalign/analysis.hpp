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

#ifndef LEXALIGN_ANALYSIS_HPP_
#define LEXALIGN_ANALYSIS_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/metrics.hpp"
#include "lexalign/stats.hpp"

namespace lexalign {

enum class AggregationLevel { kConcept, kDomain };
std::string_view to_string(AggregationLevel level) noexcept;
/// Parses "concept" or "domain"; throws kInvalidArgument.
AggregationLevel parse_level(std::string_view text);

/// (language pair, concept or domain id).
struct AggregateKey {
  LanguagePair pair;
  std::string item;

  auto operator<=>(const AggregateKey&) const = default;
};

/// Aggregated alignment of one metric; keys are sorted and unique.
struct AggregatedVector {
  std::string label;  // defaults to the metric name
  Metric metric = Metric::kSncStatic;
  AggregationLevel level = AggregationLevel::kConcept;
  std::vector<AggregateKey> keys;
  std::vector<double> values;
  std::vector<std::string> diagnostics;

  std::size_t size() const noexcept { return keys.size(); }
  std::optional<double> find(const AggregateKey& key) const;
  /// `lang_a,lang_b,<level>,value`
  std::string to_csv() const;
  std::string to_json() const;
};

/// Concept level flattens the scored cells of `metric`; domain level takes
/// the mean over each (pair, domain)'s scored concepts. Gaps are skipped, and
/// a (pair, domain) with no scores is left out with a diagnostic. Throws
/// kEmptyTable when the table has no cells for `metric`.
AggregatedVector aggregate(const AlignmentTable& table, Metric metric,
                           AggregationLevel level, const ConceptLexicon& lexicon);

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> r;
  std::vector<std::vector<double>> p;
  std::size_t common_keys = 0;
  std::vector<std::size_t> input_sizes;

  std::string heatmap_json() const;
};

/// Pairwise correlations over the keys shared by every vector. Throws
/// kNoCommonKeys.
CorrelationMatrix metric_correlation_matrix(
    std::span<const AggregatedVector> vectors,
    CorrelationMethod method = CorrelationMethod::kPearson);

/// A named feature keyed at one of three granularities.
/// Lookups try (pair, item) first, then pair, then concept.
struct FeatureSeries {
  std::string name;
  std::map<std::string, double> by_concept;
  std::map<LanguagePair, double> by_pair;
  std::map<AggregateKey, double> by_key;

  std::size_t size() const noexcept {
    return by_concept.size() + by_pair.size() + by_key.size();
  }
};

struct FeatureCorrelation {
  std::string feature;
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;             // joined keys
  std::size_t vector_size = 0;   // keys in the aggregated vector
  std::size_t feature_size = 0;  // entries in the feature series
};

/// Joins `feature` onto the vector's keys and correlates with two-tailed p.
/// For domain-level vectors, concept-keyed entries are averaged over each
/// domain's concepts (requires `lexicon`). Throws kInsufficientOverlap
/// (< 3 keys) and kConstantInput.
FeatureCorrelation feature_correlation(const AggregatedVector& vector,
                                       const FeatureSeries& feature,
                                       const ConceptLexicon* lexicon = nullptr);

/// Correlation of the residuals of x and y after least squares on the
/// covariates plus an intercept; p uses n - 2 - |covariates| degrees of
/// freedom. Throws kLengthMismatch, kInsufficientSamples, kRankDeficient,
/// kConstantInput.
CorrelationResult partial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const std::vector<double>> covariates);

struct RegressionFit {
  std::vector<double> coefficients;  // intercept first
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
};

/// Ordinary least squares with intercept. Throws kLengthMismatch,
/// kInsufficientSamples (n <= p + 1), kRankDeficient, kConstantInput.
RegressionFit linear_regression(std::span<const double> response,
                                std::span<const std::vector<double>> predictors);
double adjusted_r_squared(std::span<const double> response,
                          std::span<const std::vector<double>> predictors);

// ---------------------------------------------------------------------------
// Feature tables

struct ConceptFeatures {
  std::optional<double> frequency_log;
  std::optional<double> concreteness;
  std::optional<double> rate_of_change;
};

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

/// One categorical value per trait; nullopt when missing.
using TraitVector = std::vector<std::optional<std::string>>;

struct FeatureTables {
  std::map<std::string, ConceptFeatures> concepts;
  std::map<std::string, GeoPoint> coordinates;
  std::map<std::string, TraitVector> traits;
};

/// `concept_id,frequency_log,concreteness,rate_of_change`; blanks missing.
std::map<std::string, ConceptFeatures> load_concept_features(const std::filesystem::path& path);
/// `language,lat,lon`. Throws kInvalidCoordinate.
std::map<std::string, GeoPoint> load_coordinates(const std::filesystem::path& path);
/// `language,trait_1..trait_n`; blanks missing.
std::map<std::string, TraitVector> load_traits(const std::filesystem::path& path);

/// "frequency_log", "concreteness", "rate_of_change"; concepts without the
/// value are left out. Throws kInvalidArgument.
FeatureSeries concept_feature_series(const std::map<std::string, ConceptFeatures>& features,
                                     std::string_view name);
/// Geodesic km per pair ("geo"); pairs lacking coordinates are left out.
FeatureSeries geodesic_series(const std::map<std::string, GeoPoint>& coordinates,
                              std::span<const LanguagePair> pairs);
/// Cultural distance per pair ("culture"); pairs lacking traits or shared
/// traits are left out.
FeatureSeries cultural_series(const std::map<std::string, TraitVector>& traits,
                              std::span<const LanguagePair> pairs);

/// `concept_id,score` or `concept_id,lang_a,lang_b,score`.
FeatureSeries load_norms(const std::filesystem::path& path);
/// feature_correlation against a norms file.
FeatureCorrelation external_norm_correlation(const AggregatedVector& vector,
                                             const std::filesystem::path& norms_path,
                                             const ConceptLexicon* lexicon = nullptr);

// ---------------------------------------------------------------------------
// Distribution summaries

struct BoxplotStats {
  std::string label;
  std::size_t n = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;   // smallest value >= q1 - 1.5 IQR
  double whisker_high = 0.0;  // largest value <= q3 + 1.5 IQR
  std::vector<double> outliers;
};

/// Quartiles by linear interpolation. Throws kInsufficientSamples if empty.
BoxplotStats boxplot_stats(std::string label, std::span<const double> values);
/// One box per domain over the concept-level values of every pair.
std::vector<BoxplotStats> domain_boxplots(const AggregatedVector& concept_level,
                                          const ConceptLexicon& lexicon);
std::string boxplots_json(std::span<const BoxplotStats> boxes);

}  // namespace lexalign

#endif  // LEXALIGN_ANALYSIS_HPP_
