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

#include "lexalign/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "lexalign/error.hpp"
#include "parallel.hpp"

namespace lexalign {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::kNeighborsOverlap: return "NO";
    case Metric::kSncStatic: return "SNC-static";
    case Metric::kSncAve: return "SNC-ave";
    case Metric::kSncCloud: return "SNC-cloud";
  }
  return "SNC-static";
}

Metric parse_metric(std::string_view text) {
  for (Metric m : {Metric::kNeighborsOverlap, Metric::kSncStatic, Metric::kSncAve,
                   Metric::kSncCloud}) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown metric '{}'", text));
}

std::string_view to_string(Direction direction) noexcept {
  switch (direction) {
    case Direction::kForward: return "forward";
    case Direction::kBackward: return "backward";
    case Direction::kBidirectional: return "bidirectional";
  }
  return "bidirectional";
}

std::string_view to_string(NeighborStatus status) noexcept {
  switch (status) {
    case NeighborStatus::kTranslated: return "translated";
    case NeighborStatus::kNoTranslation: return "dropped:no_translation";
    case NeighborStatus::kNotEmbedded: return "dropped:not_embedded";
  }
  return "translated";
}

LanguagePair LanguagePair::of(std::string_view x, std::string_view y) {
  if (y < x) std::swap(x, y);
  return LanguagePair{std::string(x), std::string(y)};
}

// ---------------------------------------------------------------------------
// Indexes

NeighborList StaticIndex::neighbors(std::string_view query, std::size_t k,
                                    const FormSet* restriction) const {
  return knn(space_, query, k, restriction);
}

double StaticIndex::similarity(std::string_view a, std::string_view b) const {
  auto ra = space_.row(a);
  auto rb = space_.row(b);
  if (!ra || !rb) {
    throw Error(ErrorCode::kUnknownQuery,
                fmt::format("'{}' not in {} space", ra ? b : a, space_.language()));
  }
  return space_.similarity(*ra, *rb);
}

bool CloudIndex::contains(std::string_view form) const {
  return store_.find(form) != nullptr;
}

NeighborList CloudIndex::neighbors(std::string_view query, std::size_t k,
                                   const FormSet* restriction) const {
  return knn_cloud(store_, query, k, restriction, aggregation_);
}

double CloudIndex::similarity(std::string_view a, std::string_view b) const {
  const PointCloud* ca = store_.find(a);
  const PointCloud* cb = store_.find(b);
  if (!ca || !cb) {
    throw Error(ErrorCode::kUnknownQuery,
                fmt::format("'{}' not in {} store", ca ? b : a, store_.language()));
  }
  return pointcloud_distance(*ca, *cb, aggregation_);
}

std::vector<std::string> CloudIndex::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(store_.size());
  for (const auto& [form, _] : store_.clouds()) out.push_back(form);
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

namespace {

struct Forms {
  std::string_view first;
  std::string_view second;
};

Forms resolve_forms(std::string_view concept_id, const Side& first, const Side& second,
                    const ConceptLexicon& lexicon) {
  if (!lexicon.has_concept(concept_id)) {
    throw Error(ErrorCode::kUnknownConcept, std::string(concept_id));
  }
  const auto& l1 = first.index->language();
  const auto& l2 = second.index->language();
  auto w1 = lexicon.form(l1, concept_id);
  auto w2 = lexicon.form(l2, concept_id);
  if (!w1 || !w2) {
    throw Error(ErrorCode::kConceptNotLexicalized,
                fmt::format("{} has no form in {}", concept_id, w1 ? l2 : l1));
  }
  if (!first.index->contains(*w1) || !second.index->contains(*w2)) {
    throw Error(ErrorCode::kConceptNotEmbedded,
                fmt::format("{} ('{}') not embedded in {}", concept_id,
                            first.index->contains(*w1) ? *w2 : *w1,
                            first.index->contains(*w1) ? l2 : l1));
  }
  return {*w1, *w2};
}

bool canonical_order(const Side& first, const Side& second) {
  return first.index->language() <= second.index->language();
}

}  // namespace

SncProfile snc_profile(std::string_view concept_id, const Side& source,
                       const Side& target, const ConceptLexicon& lexicon,
                       std::size_t k) {
  const Forms forms = resolve_forms(concept_id, source, target, lexicon);
  SncProfile profile;
  profile.concept_id = std::string(concept_id);
  profile.source_language = source.index->language();
  profile.target_language = target.index->language();
  profile.source_form = std::string(forms.first);
  profile.target_form = std::string(forms.second);

  const NeighborList list = source.index->neighbors(forms.first, k, source.restriction);
  profile.shortfall = list.shortfall;
  profile.entries.reserve(list.neighbors.size());
  for (const Neighbor& n : list.neighbors) {
    ProfileEntry entry;
    entry.neighbor = n.form;
    entry.source_similarity = n.similarity;
    const Translation t =
        lexicon.translate(n.form, profile.source_language, profile.target_language);
    if (!t.form) {
      entry.status = NeighborStatus::kNoTranslation;
    } else {
      entry.translation = *t.form;
      if (!target.index->contains(*t.form)) {
        entry.status = NeighborStatus::kNotEmbedded;
      } else {
        const double sim = target.index->similarity(forms.second, *t.form);
        entry.target_similarity = sim;
        profile.source_similarities.push_back(n.similarity);
        profile.target_similarities.push_back(sim);
      }
    }
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

double score_profile(const SncProfile& profile, const MetricConfig& config) {
  const std::size_t floor = std::max<std::size_t>(config.min_survivors, 3);
  if (profile.survivors() < floor) {
    throw Error(ErrorCode::kTooFewSurvivors,
                fmt::format("{} {}->{}: {} survivors, need {}", profile.concept_id,
                            profile.source_language, profile.target_language,
                            profile.survivors(), floor));
  }
  return correlation(config.correlation, profile.source_similarities,
                     profile.target_similarities);
}

AlignmentScore snc_unidirectional(std::string_view concept_id, const Side& source,
                                  const Side& target, const ConceptLexicon& lexicon,
                                  const MetricConfig& config, Metric metric) {
  const SncProfile profile = snc_profile(concept_id, source, target, lexicon, config.k);
  AlignmentScore score;
  score.concept_id = std::string(concept_id);
  score.pair = LanguagePair::of(source.index->language(), target.index->language());
  score.metric = metric;
  score.value = score_profile(profile, config);
  const bool along = canonical_order(source, target);
  score.direction = along ? Direction::kForward : Direction::kBackward;
  (along ? score.survivors_forward : score.survivors_backward) = profile.survivors();
  return score;
}

AlignmentScore snc_bidirectional(std::string_view concept_id, const Side& first,
                                 const Side& second, const ConceptLexicon& lexicon,
                                 const MetricConfig& config, Metric metric) {
  const bool along = canonical_order(first, second);
  const Side& a = along ? first : second;
  const Side& b = along ? second : first;
  const AlignmentScore forward = snc_unidirectional(concept_id, a, b, lexicon, config, metric);
  const AlignmentScore backward = snc_unidirectional(concept_id, b, a, lexicon, config, metric);
  AlignmentScore score = forward;
  score.direction = Direction::kBidirectional;
  score.value = (forward.value + backward.value) / 2.0;
  score.survivors_backward = backward.survivors_backward;
  return score;
}

AlignmentScore neighbors_overlap(std::string_view concept_id, const Side& first,
                                 const Side& second, const ConceptLexicon& lexicon,
                                 std::size_t k) {
  const bool along = canonical_order(first, second);
  const Side& a = along ? first : second;
  const Side& b = along ? second : first;
  const Forms forms = resolve_forms(concept_id, a, b, lexicon);

  auto concepts_near = [&](const Side& side, std::string_view form) {
    const NeighborList list = side.index->neighbors(form, k, side.restriction);
    std::vector<std::string> words;
    words.reserve(list.neighbors.size());
    for (const auto& n : list.neighbors) words.push_back(n.form);
    return std::make_pair(
        lexicon.back_translate_to_concepts(words, side.index->language()), words.size());
  };
  const auto [concepts_a, count_a] = concepts_near(a, forms.first);
  const auto [concepts_b, count_b] = concepts_near(b, forms.second);

  std::size_t shared = 0;
  for (const auto& c : concepts_a) shared += concepts_b.contains(c) ? 1 : 0;
  const std::size_t denominator = std::max(concepts_a.size(), concepts_b.size());

  AlignmentScore score;
  score.concept_id = std::string(concept_id);
  score.pair = LanguagePair::of(a.index->language(), b.index->language());
  score.metric = Metric::kNeighborsOverlap;
  score.direction = Direction::kBidirectional;
  score.value = static_cast<double>(shared) / static_cast<double>(denominator);
  score.survivors_forward = count_a;
  score.survivors_backward = count_b;
  return score;
}

// ---------------------------------------------------------------------------
// Tables

void AlignmentTable::insert(AlignmentCell cell) {
  CellKey key{cell.metric, cell.pair, cell.concept_id};
  if (cells_.contains(key)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("duplicate cell {} {} {}", to_string(cell.metric),
                            cell.pair.label(), cell.concept_id));
  }
  cells_.emplace(std::move(key), std::move(cell));
}

void AlignmentTable::merge(const AlignmentTable& other) {
  if (k == 0) k = other.k;
  for (const auto& [key, cell] : other.cells_) insert(cell);
  for (const auto& [name, digest] : other.provenance) provenance.emplace(name, digest);
}

const AlignmentCell* AlignmentTable::find(Metric metric, const LanguagePair& pair,
                                          std::string_view concept_id) const {
  auto it = cells_.find(CellKey{metric, pair, std::string(concept_id)});
  return it == cells_.end() ? nullptr : &it->second;
}

std::size_t AlignmentTable::scored() const {
  return static_cast<std::size_t>(std::count_if(
      cells_.begin(), cells_.end(), [](const auto& kv) { return kv.second.value.has_value(); }));
}

std::vector<Metric> AlignmentTable::metrics() const {
  std::vector<Metric> out;
  for (const auto& [key, _] : cells_) {
    if (out.empty() || out.back() != std::get<0>(key)) out.push_back(std::get<0>(key));
  }
  return out;
}

std::vector<LanguagePair> AlignmentTable::pairs() const {
  std::vector<LanguagePair> out;
  for (const auto& [key, _] : cells_) out.push_back(std::get<1>(key));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AlignmentTable AlignmentTable::only(Metric metric) const {
  AlignmentTable out;
  out.k = k;
  out.provenance = provenance;
  for (const auto& [key, cell] : cells_) {
    if (std::get<0>(key) == metric) out.cells_.emplace(key, cell);
  }
  return out;
}

AlignmentTable compute_table(const TableRequest& request, const ConceptLexicon& lexicon,
                             const IndexMap& indexes) {
  std::vector<std::string> languages = request.languages;
  std::sort(languages.begin(), languages.end());
  languages.erase(std::unique(languages.begin(), languages.end()), languages.end());
  for (const auto& language : languages) {
    if (!indexes.contains(language)) {
      throw Error(ErrorCode::kUnknownLanguage,
                  fmt::format("no {} index for '{}'", to_string(request.metric), language));
    }
  }

  std::vector<std::string> concepts;
  if (request.concepts) {
    concepts = *request.concepts;
    std::sort(concepts.begin(), concepts.end());
    concepts.erase(std::unique(concepts.begin(), concepts.end()), concepts.end());
  } else {
    for (const auto& c : lexicon.concepts()) concepts.push_back(c.id);
  }

  struct Task {
    const std::string* a;
    const std::string* b;
    const std::string* concept_id;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < languages.size(); ++i) {
    for (std::size_t j = i + 1; j < languages.size(); ++j) {
      for (const auto& c : concepts) tasks.push_back(Task{&languages[i], &languages[j], &c});
    }
  }

  auto side_of = [&](const std::string& language) {
    Side side;
    side.index = indexes.find(language)->second.get();
    if (request.restrictions) {
      auto it = request.restrictions->find(language);
      if (it != request.restrictions->end()) side.restriction = &it->second;
    }
    return side;
  };

  std::vector<AlignmentCell> cells(tasks.size());
  internal::parallel_for(tasks.size(), request.jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    AlignmentCell& cell = cells[t];
    cell.metric = request.metric;
    cell.pair = LanguagePair{*task.a, *task.b};
    cell.concept_id = *task.concept_id;
    const Side a = side_of(*task.a);
    const Side b = side_of(*task.b);
    try {
      const AlignmentScore score =
          request.metric == Metric::kNeighborsOverlap
              ? neighbors_overlap(cell.concept_id, a, b, lexicon, request.config.k)
              : snc_bidirectional(cell.concept_id, a, b, lexicon, request.config,
                                  request.metric);
      cell.value = score.value;
      cell.survivors_forward = score.survivors_forward;
      cell.survivors_backward = score.survivors_backward;
    } catch (const Error& e) {
      cell.reason = std::string(to_string(e.code()));
    }
  });

  AlignmentTable table;
  table.k = request.config.k;
  for (auto& cell : cells) table.insert(std::move(cell));
  return table;
}

}  // namespace lexalign
