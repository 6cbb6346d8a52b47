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

#ifndef LEXALIGN_METRICS_HPP_
#define LEXALIGN_METRICS_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lexalign/embed_store.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/stats.hpp"

namespace lexalign {

enum class Metric { kNeighborsOverlap, kSncStatic, kSncAve, kSncCloud };

/// "NO", "SNC-static", "SNC-ave", "SNC-cloud".
std::string_view to_string(Metric metric) noexcept;
Metric parse_metric(std::string_view text);

enum class Direction { kForward, kBackward, kBidirectional };
std::string_view to_string(Direction direction) noexcept;

/// Unordered language pair stored in canonical (sorted) order.
struct LanguagePair {
  std::string a;
  std::string b;

  static LanguagePair of(std::string_view x, std::string_view y);
  std::string label() const { return a + "-" + b; }
  auto operator<=>(const LanguagePair&) const = default;
};

struct MetricConfig {
  std::size_t k = 100;
  std::size_t min_survivors = 10;
  CorrelationMethod correlation = CorrelationMethod::kPearson;
};

/// Neighbor search and pairwise similarity over one language's
/// lexicon-keyed vocabulary. Static vectors and point clouds both plug in
/// here, so the metrics never see where the similarities come from.
class NeighborIndex {
 public:
  virtual ~NeighborIndex() = default;

  virtual const std::string& language() const = 0;
  virtual bool contains(std::string_view form) const = 0;
  virtual NeighborList neighbors(std::string_view query, std::size_t k,
                                 const FormSet* restriction) const = 0;
  /// Similarity of `a` to `b`, evaluated in that argument order.
  virtual double similarity(std::string_view a, std::string_view b) const = 0;
  virtual std::vector<std::string> vocabulary() const = 0;
};

class StaticIndex final : public NeighborIndex {
 public:
  explicit StaticIndex(VectorSpace space) : space_(std::move(space)) {}

  const std::string& language() const override { return space_.language(); }
  bool contains(std::string_view form) const override { return space_.contains(form); }
  NeighborList neighbors(std::string_view query, std::size_t k,
                         const FormSet* restriction) const override;
  double similarity(std::string_view a, std::string_view b) const override;
  std::vector<std::string> vocabulary() const override { return space_.forms(); }

  const VectorSpace& space() const noexcept { return space_; }

 private:
  VectorSpace space_;
};

class CloudIndex final : public NeighborIndex {
 public:
  CloudIndex(PointCloudStore store, CloudAggregation aggregation)
      : store_(std::move(store)), aggregation_(aggregation) {}

  const std::string& language() const override { return store_.language(); }
  bool contains(std::string_view form) const override;
  NeighborList neighbors(std::string_view query, std::size_t k,
                         const FormSet* restriction) const override;
  double similarity(std::string_view a, std::string_view b) const override;
  std::vector<std::string> vocabulary() const override;

  const PointCloudStore& store() const noexcept { return store_; }

 private:
  PointCloudStore store_;
  CloudAggregation aggregation_;
};

/// One language's side of a comparison. `restriction` narrows the neighbor
/// candidates; null means the whole lexicon-keyed vocabulary.
struct Side {
  const NeighborIndex* index = nullptr;
  const FormSet* restriction = nullptr;
};

enum class NeighborStatus { kTranslated, kNoTranslation, kNotEmbedded };
std::string_view to_string(NeighborStatus status) noexcept;

struct ProfileEntry {
  std::string neighbor;
  double source_similarity = 0.0;
  std::optional<std::string> translation;
  std::optional<double> target_similarity;  // set for surviving neighbors
  NeighborStatus status = NeighborStatus::kTranslated;
};

/// The paired similarity vectors behind one directional SNC score.
struct SncProfile {
  std::string concept_id;
  std::string source_language;
  std::string target_language;
  std::string source_form;
  std::string target_form;
  std::vector<ProfileEntry> entries;         // every retrieved neighbor
  std::vector<double> source_similarities;  // survivors only
  std::vector<double> target_similarities;  // survivors only, same order
  bool shortfall = false;

  std::size_t survivors() const noexcept { return source_similarities.size(); }
};

/// Retrieves the k nearest neighbors of the concept's source form,
/// translates them, and keeps the pairs whose translation is embedded in the
/// target. Throws kUnknownConcept, kConceptNotLexicalized,
/// kConceptNotEmbedded, and neighbor-search errors.
SncProfile snc_profile(std::string_view concept_id, const Side& source,
                       const Side& target, const ConceptLexicon& lexicon,
                       std::size_t k);

/// Correlation of a profile's survivor vectors. Throws kTooFewSurvivors,
/// kConstantInput.
double score_profile(const SncProfile& profile, const MetricConfig& config);

struct AlignmentScore {
  std::string concept_id;
  LanguagePair pair;
  Metric metric = Metric::kSncStatic;
  double value = 0.0;
  Direction direction = Direction::kBidirectional;
  std::size_t survivors_forward = 0;   // canonical a -> b
  std::size_t survivors_backward = 0;  // canonical b -> a
};

/// a_{L1->L2}. `direction` reports whether source->target runs along the
/// canonical pair order.
AlignmentScore snc_unidirectional(std::string_view concept_id, const Side& source,
                                  const Side& target, const ConceptLexicon& lexicon,
                                  const MetricConfig& config,
                                  Metric metric = Metric::kSncStatic);

/// Mean of both directions; invariant under swapping the sides.
AlignmentScore snc_bidirectional(std::string_view concept_id, const Side& first,
                                 const Side& second, const ConceptLexicon& lexicon,
                                 const MetricConfig& config,
                                 Metric metric = Metric::kSncStatic);

/// Shared back-translated concepts of both neighborhoods, normalised by the
/// larger concept set (k whenever every neighbor maps to one concept).
AlignmentScore neighbors_overlap(std::string_view concept_id, const Side& first,
                                 const Side& second, const ConceptLexicon& lexicon,
                                 std::size_t k);

/// One cell of an alignment table: a score or a reason-coded gap.
struct AlignmentCell {
  Metric metric = Metric::kSncStatic;
  LanguagePair pair;
  std::string concept_id;
  std::optional<double> value;
  std::size_t survivors_forward = 0;
  std::size_t survivors_backward = 0;
  std::string reason;  // non-empty exactly when !value

  bool operator==(const AlignmentCell&) const = default;
};

using CellKey = std::tuple<Metric, LanguagePair, std::string>;

class AlignmentTable {
 public:
  std::size_t k = 0;
  std::map<std::string, std::string> provenance;

  /// Throws kInvalidArgument on a duplicate (metric, pair, concept).
  void insert(AlignmentCell cell);
  /// Inserts every cell of `other`; provenance entries are merged.
  void merge(const AlignmentTable& other);

  const std::map<CellKey, AlignmentCell>& cells() const noexcept { return cells_; }
  const AlignmentCell* find(Metric metric, const LanguagePair& pair,
                            std::string_view concept_id) const;
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  std::size_t scored() const;

  std::vector<Metric> metrics() const;
  std::vector<LanguagePair> pairs() const;
  /// Subset with one metric.
  AlignmentTable only(Metric metric) const;

  bool operator==(const AlignmentTable&) const = default;

 private:
  std::map<CellKey, AlignmentCell> cells_;
};

using IndexMap = std::map<std::string, std::shared_ptr<const NeighborIndex>, std::less<>>;
using RestrictionMap = std::map<std::string, FormSet, std::less<>>;

struct TableRequest {
  Metric metric = Metric::kSncStatic;
  std::vector<std::string> languages;  // every unordered pair is computed
  MetricConfig config;
  std::size_t jobs = 1;
  /// Concepts to score; all lexicon concepts when unset.
  std::optional<std::vector<std::string>> concepts;
  /// Per-language neighbor candidate restriction.
  const RestrictionMap* restrictions = nullptr;
};

/// Scores every (unordered pair, concept) cell. Failures become gaps whose
/// reason is the error code name; nothing is imputed. Throws
/// kUnknownLanguage when a requested language has no index.
AlignmentTable compute_table(const TableRequest& request, const ConceptLexicon& lexicon,
                             const IndexMap& indexes);

}  // namespace lexalign

#endif  // LEXALIGN_METRICS_HPP_
