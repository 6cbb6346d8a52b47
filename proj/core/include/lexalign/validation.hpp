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

#ifndef LEXALIGN_VALIDATION_HPP_
#define LEXALIGN_VALIDATION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexalign/metrics.hpp"

namespace lexalign {

/// Output of every validation routine. `statistics` holds the summary
/// numbers; `records` the raw per-trial (or per-concept, per-pair) rows,
/// with `columns` naming the entries of each row's `values`.
struct ValidationReport {
  struct Record {
    std::string label;
    std::vector<double> values;
  };

  std::string kind;  // "shuffle", "sensitivity", "gaps"
  std::map<std::string, double> statistics;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> columns;
  std::vector<Record> records;
  std::vector<std::string> diagnostics;

  std::string to_json() const;
  /// `label,<columns...>` CSV of the records.
  std::string records_csv() const;
};

// ---------------------------------------------------------------------------
// Shuffle baseline

struct ShuffleConfig {
  std::size_t permutations = 100;
  std::uint64_t seed = 0;
  /// Replace every permutation with the identity (sanity check).
  bool force_identity = false;
  std::size_t jobs = 1;
};

/// Scores each concept, then re-scores it `permutations` times with the
/// translated-neighbor similarities permuted (independently per direction).
/// Statistics: r between the original and each shuffled score vector across
/// concepts (mean/min/max, mean p), r against the per-concept shuffled
/// means, and counts. Concepts whose original score fails are skipped and
/// counted.
ValidationReport shuffle_baseline(std::span<const std::string> concepts, const Side& first,
                                  const Side& second, const ConceptLexicon& lexicon,
                                  const MetricConfig& config, const ShuffleConfig& shuffle);

// ---------------------------------------------------------------------------
// Domain-removal sensitivity

struct SensitivityConfig {
  std::size_t removed_domains = 5;  // j
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// Per trial: removes j random domains from the neighbor candidates and the
/// scored concepts, recomputes `request.metric`, aggregates by domain, and
/// correlates with `baseline`'s domain vector over the surviving keys.
/// Throws kTooFewDomains when fewer than j+2 domains have concepts.
ValidationReport sensitivity(const AlignmentTable& baseline, const TableRequest& request,
                             const ConceptLexicon& lexicon, const IndexMap& indexes,
                             const SensitivityConfig& config);

/// Forms of `language` that still lexicalize a concept outside `removed`.
FormSet restriction_without_domains(const ConceptLexicon& lexicon,
                                    std::string_view language,
                                    const std::set<std::string>& removed);

// ---------------------------------------------------------------------------
// Lexical gaps

struct Subdomain {
  std::string id;
  std::set<std::string> concepts;  // C_s
};

/// Kinship-style subdomains with per-language gap patterns. Also holds the
/// mapping of lexicon concepts onto subdomains.
class GapInventory {
 public:
  /// Declares (or extends) a subdomain. Throws kGapOutsideSubdomain if a
  /// concept already belongs to another subdomain.
  void add_concept(const std::string& subdomain, const std::string& concept_id);
  /// Records that `language` has data for `subdomain`; gaps are optional.
  void cover(const std::string& language, const std::string& subdomain);
  /// Marks a gap. Throws kGapOutsideSubdomain unless the concept is a member
  /// of `subdomain`.
  void add_gap(const std::string& language, const std::string& subdomain,
               const std::string& concept_id);
  /// Maps a lexicon concept onto a subdomain (the filtered concept set).
  void map_concept(const std::string& lexicon_concept, const std::string& subdomain);

  const std::vector<Subdomain>& subdomains() const noexcept { return subdomains_; }
  const std::set<std::string>& languages() const noexcept { return languages_; }
  bool covers(std::string_view language, std::string_view subdomain) const;
  /// xi_{L,s}; empty when the language has no gaps (or no data) there.
  const std::set<std::string>& gaps(std::string_view language,
                                    std::string_view subdomain) const;
  const std::map<std::string, std::string>& concept_map() const noexcept {
    return concept_map_;
  }
  /// Lexicon concepts with a subdomain mapping, sorted.
  std::vector<std::string> filtered_concepts() const;

 private:
  Subdomain& subdomain(const std::string& id);

  std::vector<Subdomain> subdomains_;  // sorted by id
  std::map<std::string, std::string> member_of_;
  std::set<std::string> languages_;
  std::set<std::pair<std::string, std::string>> coverage_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> patterns_;
  std::map<std::string, std::string> concept_map_;
};

/// Reads the gap TSV (`language, subdomain, concept_id, is_gap`) and the
/// concept-map TSV (`lexicon_concept_id, subdomain`). A concept's first row
/// fixes its subdomain. Throws kMalformedRow, kGapOutsideSubdomain.
GapInventory load_gaps(const std::filesystem::path& gaps_path,
                       const std::filesystem::path& concept_map_path);

/// lambda = mean over subdomains of |xi_1 ∩ xi_2| / |C_s|. A language with
/// no data for a subdomain counts as gap-free there, with a diagnostic.
/// Throws kUnknownLanguage, kEmptySubdomain.
double gap_alignment(std::string_view first, std::string_view second,
                     const GapInventory& inventory,
                     std::vector<std::string>* diagnostics = nullptr);

/// Correlates per-pair mean scores (over the filtered concepts) of `metric`
/// with lambda across language pairs. Throws kInsufficientPairs (< 3 pairs)
/// and kConstantInput.
ValidationReport validate_against_gaps(const AlignmentTable& table, Metric metric,
                                       const GapInventory& inventory);

}  // namespace lexalign

#endif  // LEXALIGN_VALIDATION_HPP_
