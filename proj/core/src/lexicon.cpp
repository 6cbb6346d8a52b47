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

#include "lexalign/lexicon.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

#include "lexalign/error.hpp"
#include "lexalign/text.hpp"

namespace lexalign {

namespace {

const std::set<std::string>& empty_concept_set() {
  static const std::set<std::string> kEmpty;
  return kEmpty;
}

Error row_error(ErrorCode code, std::size_t line, const std::string& what) {
  return Error(code, fmt::format("line {}: {}", line, what));
}

}  // namespace

ConceptLexicon ConceptLexicon::from_rows(std::span<const LexiconRow> rows,
                                         std::span<const SemanticDomain> domains) {
  ConceptLexicon lex;
  std::map<std::string, SemanticDomain, std::less<>> domain_map;
  const bool closed_domains = !domains.empty();
  for (const auto& d : domains) {
    SemanticDomain copy = d;
    copy.concept_count = 0;
    domain_map.emplace(copy.id, std::move(copy));
  }

  std::map<std::string, std::string, std::less<>> concept_domain;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LexiconRow& row = rows[i];
    const std::size_t line = row.line != 0 ? row.line : i + 1;
    if (row.concept_id.empty() || row.domain_id.empty() ||
        row.language.empty() || row.form.empty()) {
      throw row_error(ErrorCode::kMalformedRow, line, "empty field");
    }
    if (closed_domains && !domain_map.contains(row.domain_id)) {
      throw row_error(ErrorCode::kUnknownDomain, line,
                      "domain '" + row.domain_id + "' is not declared");
    }
    auto [it, inserted] = concept_domain.emplace(row.concept_id, row.domain_id);
    if (!inserted && it->second != row.domain_id) {
      throw row_error(ErrorCode::kMalformedRow, line,
                      "concept '" + row.concept_id + "' already belongs to domain '" +
                          it->second + "'");
    }
    std::string form = nfc(row.form);
    auto& by_concept = lex.forms_by_concept_[row.language];
    if (!by_concept.emplace(row.concept_id, form).second) {
      throw row_error(ErrorCode::kDuplicateLexicalization, line,
                      "concept '" + row.concept_id + "' already lexicalized in '" +
                          row.language + "'");
    }
    lex.concepts_by_form_[row.language][form].insert(row.concept_id);
  }

  for (const auto& [id, domain_id] : concept_domain) {
    lex.concept_index_.emplace(id, lex.concepts_.size());
    lex.concepts_.push_back(Concept{id, id, domain_id});
    auto [it, inserted] =
        domain_map.try_emplace(domain_id, SemanticDomain{domain_id, domain_id, 0});
    ++it->second.concept_count;
  }
  for (auto& [id, domain] : domain_map) lex.domains_.push_back(std::move(domain));
  return lex;
}

std::vector<std::string> ConceptLexicon::languages() const {
  std::vector<std::string> out;
  for (const auto& [language, _] : forms_by_concept_) out.push_back(language);
  return out;
}

bool ConceptLexicon::has_concept(std::string_view concept_id) const {
  return concept_index_.find(concept_id) != concept_index_.end();
}

const Concept& ConceptLexicon::concept_by_id(std::string_view concept_id) const {
  auto it = concept_index_.find(concept_id);
  if (it == concept_index_.end()) {
    throw Error(ErrorCode::kUnknownConcept, std::string(concept_id));
  }
  return concepts_[it->second];
}

const std::string& ConceptLexicon::domain_of(std::string_view concept_id) const {
  return concept_by_id(concept_id).domain_id;
}

std::vector<std::string> ConceptLexicon::concepts_in_domain(
    std::string_view domain_id) const {
  std::vector<std::string> out;
  for (const auto& c : concepts_) {
    if (c.domain_id == domain_id) out.push_back(c.id);
  }
  return out;
}

std::optional<std::string_view> ConceptLexicon::form(
    std::string_view language, std::string_view concept_id) const {
  auto lang = forms_by_concept_.find(language);
  if (lang == forms_by_concept_.end()) return std::nullopt;
  auto it = lang->second.find(concept_id);
  if (it == lang->second.end()) return std::nullopt;
  return std::string_view(it->second);
}

const std::set<std::string>& ConceptLexicon::concepts_of(
    std::string_view language, std::string_view form) const {
  auto lang = concepts_by_form_.find(language);
  if (lang == concepts_by_form_.end()) return empty_concept_set();
  auto it = lang->second.find(form);
  if (it == lang->second.end()) return empty_concept_set();
  return it->second;
}

bool ConceptLexicon::has_word(std::string_view language,
                              std::string_view form) const {
  return !concepts_of(language, form).empty();
}

std::vector<std::string> ConceptLexicon::forms(std::string_view language) const {
  std::vector<std::string> out;
  auto lang = concepts_by_form_.find(language);
  if (lang == concepts_by_form_.end()) return out;
  for (const auto& [form, _] : lang->second) out.push_back(form);
  return out;
}

Translation ConceptLexicon::translate(std::string_view word,
                                      std::string_view source_language,
                                      std::string_view target_language) const {
  const auto& concepts = concepts_of(source_language, word);
  if (concepts.empty()) {
    throw Error(ErrorCode::kUnknownWord,
                fmt::format("'{}' not in {} lexicon", word, source_language));
  }
  Translation result;
  std::set<std::string_view> distinct;
  // std::set iterates concept ids in lexicographic order.
  for (const auto& concept_id : concepts) {
    auto target = form(target_language, concept_id);
    if (!target) continue;
    if (!result.form) {
      result.form = std::string(*target);
      result.concept_id = concept_id;
    }
    distinct.insert(*target);
  }
  result.ambiguity_count = distinct.size();
  return result;
}

std::set<std::string> ConceptLexicon::back_translate_to_concepts(
    std::span<const std::string> words, std::string_view language) const {
  std::set<std::string> out;
  for (const auto& word : words) {
    const auto& concepts = concepts_of(language, word);
    if (concepts.empty()) {
      throw Error(ErrorCode::kUnknownWord,
                  fmt::format("'{}' not in {} lexicon", word, language));
    }
    out.insert(concepts.begin(), concepts.end());
  }
  return out;
}

namespace {

DelimitedFile read_tsv(const std::filesystem::path& path,
                       const std::vector<std::string>& expected_header) {
  DelimitedFile file = read_delimited(path, '\t');
  if (file.header != expected_header) {
    throw row_error(ErrorCode::kBadHeader, 1,
                    fmt::format("expected header '{}'", fmt::join(expected_header, "\\t")));
  }
  for (const auto& record : file.records) {
    if (record.fields.size() != expected_header.size()) {
      throw row_error(ErrorCode::kMalformedRow, record.line,
                      fmt::format("expected {} fields, found {}",
                                  expected_header.size(), record.fields.size()));
    }
  }
  return file;
}

}  // namespace

ConceptLexicon load_lexicon(const std::filesystem::path& path,
                            const std::optional<std::filesystem::path>& domains_path) {
  std::vector<SemanticDomain> domains;
  if (domains_path) {
    for (auto& record : read_tsv(*domains_path, {"domain_id", "name"}).records) {
      domains.push_back(SemanticDomain{std::move(record.fields[0]),
                                       std::move(record.fields[1]), 0});
    }
  }
  std::vector<LexiconRow> rows;
  for (auto& record :
       read_tsv(path, {"concept_id", "domain_id", "language", "form"}).records) {
    auto& f = record.fields;
    rows.push_back(LexiconRow{std::move(f[0]), std::move(f[1]), std::move(f[2]),
                              std::move(f[3]), record.line});
  }
  return ConceptLexicon::from_rows(rows, domains);
}

}  // namespace lexalign
