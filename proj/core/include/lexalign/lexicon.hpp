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

#ifndef LEXALIGN_LEXICON_HPP_
#define LEXALIGN_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign {

struct Concept {
  std::string id;
  std::string gloss;
  std::string domain_id;

  bool operator==(const Concept&) const = default;
};

struct SemanticDomain {
  std::string id;
  std::string name;
  std::size_t concept_count = 0;

  bool operator==(const SemanticDomain&) const = default;
};

struct Lexicalization {
  std::string concept_id;
  std::string language;
  std::string form;
};

/// One line of the lexicon TSV.
struct LexiconRow {
  std::string concept_id;
  std::string domain_id;
  std::string language;
  std::string form;
  std::size_t line = 0;  // source line for diagnostics; 0 when synthetic
};

/// Result of resolving a word into another language through the concept
/// space. `form` is empty when none of the word's concepts is lexicalized in
/// the target language.
struct Translation {
  std::optional<std::string> form;
  std::string concept_id;           // concept whose target form was chosen
  std::size_t ambiguity_count = 0;  // distinct target forms on offer
};

/// Concepts with their domains and per-language lexicalizations.
///
/// Immutable once built. A form may lexicalize several concepts within one
/// language (colexification); a concept has at most one form per language.
class ConceptLexicon {
 public:
  /// Builds a lexicon from rows. Forms are NFC-normalized. When `domains` is
  /// non-empty it is the closed set of valid domain ids; otherwise domains
  /// are inferred from the rows. Errors name the offending row by its
  /// `line`, or its 1-based position when `line` is 0.
  static ConceptLexicon from_rows(std::span<const LexiconRow> rows,
                                  std::span<const SemanticDomain> domains = {});

  const std::vector<Concept>& concepts() const noexcept { return concepts_; }
  const std::vector<SemanticDomain>& domains() const noexcept {
    return domains_;
  }
  /// Sorted language codes with at least one lexicalization.
  std::vector<std::string> languages() const;

  bool has_concept(std::string_view concept_id) const;
  const Concept& concept_by_id(std::string_view concept_id) const;
  const std::string& domain_of(std::string_view concept_id) const;
  /// Concept ids of a domain, sorted.
  std::vector<std::string> concepts_in_domain(std::string_view domain_id) const;

  /// r_L(c): the form lexicalizing `concept_id` in `language`, if any.
  std::optional<std::string_view> form(std::string_view language,
                                       std::string_view concept_id) const;
  /// Concepts lexicalized by `form` in `language` (sorted); empty if unknown.
  const std::set<std::string>& concepts_of(std::string_view language,
                                           std::string_view form) const;
  bool has_word(std::string_view language, std::string_view form) const;
  /// All forms of a language, sorted.
  std::vector<std::string> forms(std::string_view language) const;

  /// Resolves a word to a target-language form. Among several lexicalized
  /// concepts the smallest concept id wins. Throws kUnknownWord.
  Translation translate(std::string_view word, std::string_view source_language,
                        std::string_view target_language) const;

  /// Union of the concept sets of `words`. Throws kUnknownWord.
  std::set<std::string> back_translate_to_concepts(
      std::span<const std::string> words, std::string_view language) const;

  bool operator==(const ConceptLexicon& other) const = default;

 private:
  std::vector<Concept> concepts_;        // sorted by id
  std::vector<SemanticDomain> domains_;  // sorted by id
  std::map<std::string, std::size_t, std::less<>> concept_index_;
  // language -> concept id -> form
  std::map<std::string, std::map<std::string, std::string, std::less<>>,
           std::less<>>
      forms_by_concept_;
  // language -> form -> concept ids
  std::map<std::string,
           std::map<std::string, std::set<std::string>, std::less<>>,
           std::less<>>
      concepts_by_form_;
};

/// Reads the lexicon TSV (`concept_id, domain_id, language, form`, with a
/// header row). `domains_path`, when given, is a TSV of `domain_id, name`
/// that closes the set of valid domains.
ConceptLexicon load_lexicon(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& domains_path = std::nullopt);

}  // namespace lexalign

#endif  // LEXALIGN_LEXICON_HPP_
