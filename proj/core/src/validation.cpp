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

#include "lexalign/validation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "lexalign/analysis.hpp"
#include "lexalign/error.hpp"
#include "lexalign/random.hpp"
#include "lexalign/stats.hpp"
#include "lexalign/text.hpp"
#include "parallel.hpp"

namespace lexalign {

namespace {

struct Summary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.mean = mean(values);
  s.min = values.front();
  s.max = values.back();
  s.median = quantile_sorted(values, 0.5);
  return s;
}

void add_summary(ValidationReport& report, const std::string& prefix,
                 const std::vector<double>& values) {
  const Summary s = summarize(values);
  report.statistics[prefix + "_mean"] = s.mean;
  report.statistics[prefix + "_min"] = s.min;
  report.statistics[prefix + "_max"] = s.max;
  report.statistics[prefix + "_median"] = s.median;
}

const std::set<std::string>& empty_set() {
  static const std::set<std::string> kEmpty;
  return kEmpty;
}

void check_header(const DelimitedFile& file, const std::vector<std::string>& expected,
                  const std::filesystem::path& path) {
  if (file.header != expected) {
    throw Error(ErrorCode::kBadHeader, fmt::format("{}: unexpected header", path.string()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Report

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["kind"] = kind;
  doc["parameters"] = parameters;
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();
  for (const auto& [name, value] : statistics) stats[name] = value;
  doc["statistics"] = stats;
  doc["columns"] = columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& record : records) {
    nlohmann::ordered_json row;
    row["label"] = record.label;
    row["values"] = record.values;
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  doc["diagnostics"] = diagnostics;
  return doc.dump(2) + "\n";
}

std::string ValidationReport::records_csv() const {
  std::ostringstream out;
  out << "label";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& record : records) {
    out << record.label;
    for (double v : record.values) out << ',' << format_real(v);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Shuffle baseline

ValidationReport shuffle_baseline(std::span<const std::string> concepts, const Side& first,
                                  const Side& second, const ConceptLexicon& lexicon,
                                  const MetricConfig& config, const ShuffleConfig& shuffle) {
  if (first.index == nullptr || second.index == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "shuffle baseline needs two indexes");
  }
  const bool along = first.index->language() <= second.index->language();
  const Side& a = along ? first : second;
  const Side& b = along ? second : first;

  std::vector<std::string> ids(concepts.begin(), concepts.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  struct Outcome {
    bool ok = false;
    std::string reason;
    double original = 0.0;
    std::vector<double> shuffled;  // one per trial
  };
  std::vector<Outcome> outcomes(ids.size());
  const std::size_t trials = shuffle.permutations;

  internal::parallel_for(ids.size(), shuffle.jobs, [&](std::size_t i) {
    Outcome& out = outcomes[i];
    SncProfile forward, backward;
    try {
      forward = snc_profile(ids[i], a, b, lexicon, config.k);
      backward = snc_profile(ids[i], b, a, lexicon, config.k);
      out.original = (score_profile(forward, config) + score_profile(backward, config)) / 2.0;
    } catch (const Error& e) {
      out.reason = std::string(to_string(e.code()));
      return;
    }
    const std::uint64_t concept_hash = hash_string(ids[i]);
    out.shuffled.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      SncProfile f = forward;
      SncProfile g = backward;
      if (!shuffle.force_identity) {
        Rng rf(derive_seed(shuffle.seed, {concept_hash, t, 0}));
        Rng rb(derive_seed(shuffle.seed, {concept_hash, t, 1}));
        rf.shuffle(f.target_similarities);
        rb.shuffle(g.target_similarities);
      }
      out.shuffled[t] = (score_profile(f, config) + score_profile(g, config)) / 2.0;
    }
    out.ok = true;
  });

  ValidationReport report;
  report.kind = "shuffle";
  report.parameters["pair"] = LanguagePair::of(a.index->language(), b.index->language()).label();
  report.parameters["permutations"] = std::to_string(trials);
  report.parameters["seed"] = std::to_string(shuffle.seed);
  report.parameters["k"] = std::to_string(config.k);
  report.parameters["force_identity"] = shuffle.force_identity ? "true" : "false";
  report.columns = {"original", "shuffled_mean"};

  std::vector<double> original;
  std::vector<double> shuffled_mean;
  std::vector<std::size_t> kept;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Outcome& out = outcomes[i];
    if (!out.ok) {
      ++skipped;
      report.diagnostics.push_back(fmt::format("{}: skipped ({})", ids[i], out.reason));
      continue;
    }
    kept.push_back(i);
    original.push_back(out.original);
    shuffled_mean.push_back(trials ? mean(out.shuffled) : out.original);
    report.records.push_back({ids[i], {original.back(), shuffled_mean.back()}});
  }
  report.statistics["concepts"] = static_cast<double>(kept.size());
  report.statistics["skipped"] = static_cast<double>(skipped);
  report.statistics["trials"] = static_cast<double>(trials);

  if (kept.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("shuffle baseline needs 3 scored concepts, got {}", kept.size()));
  }
  std::vector<double> rs;
  std::vector<double> ps;
  std::size_t failed = 0;
  std::vector<double> column(kept.size());
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t j = 0; j < kept.size(); ++j) column[j] = outcomes[kept[j]].shuffled[t];
    try {
      const CorrelationResult c = correlate(CorrelationMethod::kPearson, original, column);
      rs.push_back(c.r);
      ps.push_back(c.p);
    } catch (const Error& e) {
      ++failed;
      report.diagnostics.push_back(fmt::format("trial {}: {}", t, to_string(e.code())));
    }
  }
  report.statistics["failed_trials"] = static_cast<double>(failed);
  if (!rs.empty()) {
    add_summary(report, "r", rs);
    report.statistics["p_mean"] = mean(ps);
  }
  try {
    const CorrelationResult c = correlate(CorrelationMethod::kPearson, original, shuffled_mean);
    report.statistics["r_of_means"] = c.r;
    report.statistics["p_of_means"] = c.p;
  } catch (const Error& e) {
    report.diagnostics.push_back(fmt::format("r_of_means: {}", to_string(e.code())));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sensitivity

FormSet restriction_without_domains(const ConceptLexicon& lexicon, std::string_view language,
                                    const std::set<std::string>& removed) {
  FormSet keep;
  for (const auto& form : lexicon.forms(language)) {
    for (const auto& concept_id : lexicon.concepts_of(language, form)) {
      if (!removed.contains(lexicon.domain_of(concept_id))) {
        keep.insert(form);
        break;
      }
    }
  }
  return keep;
}

ValidationReport sensitivity(const AlignmentTable& baseline, const TableRequest& request,
                             const ConceptLexicon& lexicon, const IndexMap& indexes,
                             const SensitivityConfig& config) {
  std::vector<std::string> domains;
  for (const auto& d : lexicon.domains()) {
    if (!lexicon.concepts_in_domain(d.id).empty()) domains.push_back(d.id);
  }
  const std::size_t j = config.removed_domains;
  if (domains.size() < j + 2) {
    throw Error(ErrorCode::kTooFewDomains,
                fmt::format("removing {} domains needs at least {}, have {}", j, j + 2,
                            domains.size()));
  }
  const AggregatedVector before =
      aggregate(baseline, request.metric, AggregationLevel::kDomain, lexicon);

  std::vector<std::string> all_concepts;
  if (request.concepts) {
    all_concepts = *request.concepts;
  } else {
    for (const auto& c : lexicon.concepts()) all_concepts.push_back(c.id);
  }

  struct Trial {
    std::set<std::string> removed;
    std::optional<CorrelationResult> result;
    std::size_t keys = 0;
    std::string reason;
  };
  std::vector<Trial> trials(config.trials);

  internal::parallel_for(trials.size(), config.jobs, [&](std::size_t t) {
    Trial& trial = trials[t];
    Rng rng(derive_seed(config.seed, {j, t}));
    for (std::size_t index : rng.sample(domains.size(), j)) trial.removed.insert(domains[index]);

    RestrictionMap restrictions;
    for (const auto& language : request.languages) {
      FormSet keep = restriction_without_domains(lexicon, language, trial.removed);
      if (request.restrictions) {
        auto it = request.restrictions->find(language);
        if (it != request.restrictions->end()) {
          FormSet both;
          for (const auto& f : keep) {
            if (it->second.contains(f)) both.insert(f);
          }
          keep = std::move(both);
        }
      }
      restrictions.emplace(language, std::move(keep));
    }
    TableRequest sub = request;
    sub.jobs = 1;
    sub.restrictions = &restrictions;
    std::vector<std::string> concepts;
    for (const auto& c : all_concepts) {
      if (!trial.removed.contains(lexicon.domain_of(c))) concepts.push_back(c);
    }
    sub.concepts = std::move(concepts);

    try {
      const AlignmentTable after_table = compute_table(sub, lexicon, indexes);
      const AggregatedVector after =
          aggregate(after_table, request.metric, AggregationLevel::kDomain, lexicon);
      std::vector<double> x, y;
      for (std::size_t i = 0; i < after.keys.size(); ++i) {
        if (trial.removed.contains(after.keys[i].item)) continue;
        if (auto v = before.find(after.keys[i])) {
          x.push_back(*v);
          y.push_back(after.values[i]);
        }
      }
      trial.keys = x.size();
      trial.result = correlate(CorrelationMethod::kPearson, x, y);
    } catch (const Error& e) {
      trial.reason = std::string(to_string(e.code()));
    }
  });

  ValidationReport report;
  report.kind = "sensitivity";
  report.parameters["metric"] = std::string(to_string(request.metric));
  report.parameters["removed_domains"] = std::to_string(j);
  report.parameters["trials"] = std::to_string(config.trials);
  report.parameters["seed"] = std::to_string(config.seed);
  report.columns = {"r", "p", "keys"};
  std::vector<double> rs, ps;
  std::size_t failed = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const Trial& trial = trials[t];
    std::string label = fmt::format("{}", t);
    for (const auto& d : trial.removed) label += ";" + d;
    if (!trial.result) {
      ++failed;
      report.diagnostics.push_back(fmt::format("trial {}: {}", t, trial.reason));
      continue;
    }
    rs.push_back(trial.result->r);
    ps.push_back(trial.result->p);
    report.records.push_back(
        {label, {trial.result->r, trial.result->p, static_cast<double>(trial.keys)}});
  }
  report.statistics["trials"] = static_cast<double>(trials.size());
  report.statistics["failed_trials"] = static_cast<double>(failed);
  report.statistics["domains"] = static_cast<double>(domains.size());
  if (!rs.empty()) {
    add_summary(report, "r", rs);
    report.statistics["p_max"] = *std::max_element(ps.begin(), ps.end());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Gap inventory

Subdomain& GapInventory::subdomain(const std::string& id) {
  auto it = std::lower_bound(subdomains_.begin(), subdomains_.end(), id,
                             [](const Subdomain& s, const std::string& key) { return s.id < key; });
  if (it == subdomains_.end() || it->id != id) it = subdomains_.insert(it, Subdomain{id, {}});
  return *it;
}

void GapInventory::add_concept(const std::string& subdomain_id, const std::string& concept_id) {
  auto [it, inserted] = member_of_.emplace(concept_id, subdomain_id);
  if (!inserted && it->second != subdomain_id) {
    throw Error(ErrorCode::kGapOutsideSubdomain,
                fmt::format("concept '{}' belongs to '{}', not '{}'", concept_id, it->second,
                            subdomain_id));
  }
  subdomain(subdomain_id).concepts.insert(concept_id);
}

void GapInventory::cover(const std::string& language, const std::string& subdomain_id) {
  subdomain(subdomain_id);
  languages_.insert(language);
  coverage_.emplace(language, subdomain_id);
}

void GapInventory::add_gap(const std::string& language, const std::string& subdomain_id,
                           const std::string& concept_id) {
  auto it = member_of_.find(concept_id);
  if (it == member_of_.end() || it->second != subdomain_id) {
    throw Error(ErrorCode::kGapOutsideSubdomain,
                fmt::format("gap '{}' is not a member of subdomain '{}'", concept_id,
                            subdomain_id));
  }
  cover(language, subdomain_id);
  patterns_[{language, subdomain_id}].insert(concept_id);
}

void GapInventory::map_concept(const std::string& lexicon_concept,
                               const std::string& subdomain_id) {
  auto it = std::lower_bound(
      subdomains_.begin(), subdomains_.end(), subdomain_id,
      [](const Subdomain& s, const std::string& key) { return s.id < key; });
  if (it == subdomains_.end() || it->id != subdomain_id) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("concept map names unknown subdomain '{}'", subdomain_id));
  }
  concept_map_[lexicon_concept] = subdomain_id;
}

bool GapInventory::covers(std::string_view language, std::string_view subdomain_id) const {
  return coverage_.contains({std::string(language), std::string(subdomain_id)});
}

const std::set<std::string>& GapInventory::gaps(std::string_view language,
                                                std::string_view subdomain_id) const {
  auto it = patterns_.find({std::string(language), std::string(subdomain_id)});
  return it == patterns_.end() ? empty_set() : it->second;
}

std::vector<std::string> GapInventory::filtered_concepts() const {
  std::vector<std::string> out;
  out.reserve(concept_map_.size());
  for (const auto& [concept_id, s] : concept_map_) out.push_back(concept_id);
  return out;
}

GapInventory load_gaps(const std::filesystem::path& gaps_path,
                       const std::filesystem::path& concept_map_path) {
  GapInventory inventory;
  const DelimitedFile gaps = read_delimited(gaps_path, '\t');
  check_header(gaps, {"language", "subdomain", "concept_id", "is_gap"}, gaps_path);
  for (const auto& record : gaps.records) {
    const auto& f = record.fields;
    const auto where = fmt::format("{}:{}", gaps_path.string(), record.line);
    if (f.size() != 4 || f[0].empty() || f[1].empty() || f[2].empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected 4 non-empty fields");
    }
    if (f[3] != "0" && f[3] != "1") {
      throw Error(ErrorCode::kMalformedRow, where + ": is_gap must be 0 or 1");
    }
    try {
      inventory.add_concept(f[1], f[2]);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", where, e.what()));
    }
    inventory.cover(f[0], f[1]);
    if (f[3] == "1") inventory.add_gap(f[0], f[1], f[2]);
  }
  const DelimitedFile map = read_delimited(concept_map_path, '\t');
  check_header(map, {"lexicon_concept_id", "subdomain"}, concept_map_path);
  for (const auto& record : map.records) {
    const auto& f = record.fields;
    const auto where = fmt::format("{}:{}", concept_map_path.string(), record.line);
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected 2 non-empty fields");
    }
    try {
      inventory.map_concept(f[0], f[1]);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", where, e.what()));
    }
  }
  return inventory;
}

double gap_alignment(std::string_view first, std::string_view second,
                     const GapInventory& inventory, std::vector<std::string>* diagnostics) {
  for (std::string_view language : {first, second}) {
    if (!inventory.languages().contains(std::string(language))) {
      throw Error(ErrorCode::kUnknownLanguage,
                  fmt::format("no gap data for language '{}'", language));
    }
  }
  if (inventory.subdomains().empty()) {
    throw Error(ErrorCode::kEmptySubdomain, "gap inventory has no subdomains");
  }
  double total = 0.0;
  for (const auto& s : inventory.subdomains()) {
    if (s.concepts.empty()) {
      throw Error(ErrorCode::kEmptySubdomain, fmt::format("subdomain '{}' is empty", s.id));
    }
    for (std::string_view language : {first, second}) {
      if (diagnostics != nullptr && !inventory.covers(language, s.id)) {
        diagnostics->push_back(
            fmt::format("{} has no data for subdomain '{}'; treated as gap-free", language, s.id));
      }
    }
    const auto& x = inventory.gaps(first, s.id);
    const auto& y = inventory.gaps(second, s.id);
    std::size_t shared = 0;
    for (const auto& c : x) shared += y.contains(c) ? 1 : 0;
    total += static_cast<double>(shared) / static_cast<double>(s.concepts.size());
  }
  return total / static_cast<double>(inventory.subdomains().size());
}

ValidationReport validate_against_gaps(const AlignmentTable& table, Metric metric,
                                       const GapInventory& inventory) {
  ValidationReport report;
  report.kind = "gaps";
  report.parameters["metric"] = std::string(to_string(metric));
  report.parameters["aggregation"] = "mean";
  report.columns = {"mu", "lambda", "concepts"};
  std::vector<double> mu, lambda;
  const auto& filtered = inventory.concept_map();
  for (const auto& pair : table.pairs()) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [concept_id, s] : filtered) {
      const AlignmentCell* cell = table.find(metric, pair, concept_id);
      if (cell != nullptr && cell->value) {
        sum += *cell->value;
        ++count;
      }
    }
    if (count == 0) {
      report.diagnostics.push_back(
          fmt::format("{}: no scored concepts in the filtered set", pair.label()));
      continue;
    }
    double l = 0.0;
    try {
      l = gap_alignment(pair.a, pair.b, inventory, &report.diagnostics);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnknownLanguage) throw;
      report.diagnostics.push_back(fmt::format("{}: {}", pair.label(), e.what()));
      continue;
    }
    mu.push_back(sum / static_cast<double>(count));
    lambda.push_back(l);
    report.records.push_back({pair.label(), {mu.back(), l, static_cast<double>(count)}});
  }
  report.statistics["pairs"] = static_cast<double>(mu.size());
  if (mu.size() < 3) {
    throw Error(ErrorCode::kInsufficientPairs,
                fmt::format("gap validation needs 3 language pairs, got {}", mu.size()));
  }
  const CorrelationResult c = correlate(CorrelationMethod::kPearson, mu, lambda);
  report.statistics["r"] = c.r;
  report.statistics["p"] = c.p;
  return report;
}

}  // namespace lexalign
