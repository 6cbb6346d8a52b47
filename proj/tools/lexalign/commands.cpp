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

#include "commands.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "config.hpp"
#include "lexalign/analysis.hpp"
#include "lexalign/embed_store.hpp"
#include "lexalign/error.hpp"
#include "lexalign/geo.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/metrics.hpp"
#include "lexalign/polysemy.hpp"
#include "lexalign/table_io.hpp"
#include "lexalign/text.hpp"
#include "lexalign/validation.hpp"

namespace lexalign::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::string safe_name(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                    c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_";
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto part : split(text, ',')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

/// Overrides given on the command line.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> k;
  std::string metric;
  std::string output;
};

/// Writes files below one directory and records what it wrote.
class OutputDir {
 public:
  OutputDir(fs::path root, std::string marker_text) : root_(std::move(root)) {
    fs::create_directories(root_);
    write_raw("PARTIAL", marker_text + "\n");
  }

  void write(const std::string& relative, const std::string& content) {
    write_raw(relative, content);
    written_.insert(relative);
  }

  void finish(const std::string& manifest) {
    write("manifest.json", manifest);
    fs::remove(root_ / "PARTIAL");
  }

  const std::set<std::string>& written() const noexcept { return written_; }
  const fs::path& root() const noexcept { return root_; }

 private:
  void write_raw(const std::string& relative, const std::string& content) {
    const fs::path target = (root_ / relative).lexically_normal();
    const auto rel = target.lexically_relative(root_);
    if (rel.empty() || *rel.begin() == "..") {
      throw Error(ErrorCode::kInvalidArgument, "refusing to write outside " + root_.string());
    }
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + target.string());
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + target.string());
  }

  fs::path root_;
  std::set<std::string> written_;
};

/// Loaded inputs shared by every command.
class Session {
 public:
  Session(PipelineConfig config, std::ostream& err) : config_(std::move(config)), err_(err) {
    config_.check_inputs();
    lexicon_ = load_lexicon(config_.lexicon, config_.domains);
    metric_config_.k = config_.k;
    metric_config_.min_survivors = config_.min_survivors;
    metric_config_.correlation = parse_correlation(config_.correlation);
    aggregation_ = parse_cloud_aggregation(config_.cloud_aggregation);
    for (const auto& m : config_.metrics) metrics_.push_back(parse_metric(m));
    if (metrics_.empty()) throw ConfigError("[run] metrics is empty");
    for (const auto& w : config_.warnings) err_ << "warning: " << w << '\n';
  }

  const PipelineConfig& config() const noexcept { return config_; }
  const ConceptLexicon& lexicon() const noexcept { return lexicon_; }
  const MetricConfig& metric_config() const noexcept { return metric_config_; }
  const std::vector<Metric>& metrics() const noexcept { return metrics_; }
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  const std::map<std::string, fs::path>& sources(Metric metric) const {
    switch (metric) {
      case Metric::kSncAve: return config_.embeddings_ave;
      case Metric::kSncCloud: return config_.clouds;
      default: return config_.embeddings;
    }
  }

  std::vector<std::string> languages(Metric metric) const {
    if (!config_.languages.empty()) {
      std::vector<std::string> out = config_.languages;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    std::vector<std::string> out;
    for (const auto& [lang, p] : sources(metric)) out.push_back(lang);
    return out;
  }

  std::vector<LanguagePair> pairs(Metric metric) const {
    const auto langs = languages(metric);
    std::vector<LanguagePair> out;
    for (std::size_t i = 0; i < langs.size(); ++i) {
      for (std::size_t j = i + 1; j < langs.size(); ++j) out.push_back({langs[i], langs[j]});
    }
    return out;
  }

  const IndexMap& indexes(Metric metric) {
    const int kind = metric == Metric::kSncAve ? 1 : metric == Metric::kSncCloud ? 2 : 0;
    auto it = cache_.find(kind);
    if (it != cache_.end()) return it->second;
    IndexMap map;
    for (const auto& lang : languages(metric)) {
      const auto& src = sources(metric);
      auto p = src.find(lang);
      if (p == src.end()) {
        throw Error(ErrorCode::kUnknownLanguage,
                    fmt::format("no {} input configured for language '{}'", to_string(metric),
                                lang));
      }
      map.emplace(lang, load_index(kind, lang, p->second));
    }
    return cache_.emplace(kind, std::move(map)).first->second;
  }

  const PointCloudStore& cloud_store(const std::string& language) {
    const IndexMap& map = indexes(Metric::kSncCloud);
    auto it = map.find(language);
    if (it == map.end()) {
      throw Error(ErrorCode::kUnknownLanguage, "no clouds for language '" + language + "'");
    }
    return dynamic_cast<const CloudIndex&>(*it->second).store();
  }

  AlignmentTable compute(Metric metric, std::optional<std::vector<std::string>> concepts = {}) {
    TableRequest request;
    request.metric = metric;
    request.languages = languages(metric);
    request.config = metric_config_;
    request.jobs = config_.jobs;
    request.concepts = std::move(concepts);
    AlignmentTable table = compute_table(request, lexicon_, indexes(metric));
    table.provenance["seed"] = std::to_string(config_.seed);
    table.provenance["correlation"] = config_.correlation;
    table.provenance["min_survivors"] = std::to_string(config_.min_survivors);
    if (metric == Metric::kSncCloud) table.provenance["cloud_aggregation"] = config_.cloud_aggregation;
    return table;
  }

  AlignmentTable compute_all() {
    AlignmentTable table;
    for (Metric m : metrics_) table.merge(compute(m));
    return table;
  }

  TableRequest request(Metric metric) const {
    TableRequest r;
    r.metric = metric;
    r.languages = languages(metric);
    r.config = metric_config_;
    r.jobs = config_.jobs;
    return r;
  }

  Json config_echo() const {
    auto rel = [&](const fs::path& p) { return p.lexically_relative(config_.base_dir).generic_string(); };
    Json c;
    Json inputs = Json::object();
    for (const auto& [label, p] : config_.inputs()) inputs[label] = rel(p);
    c["inputs"] = inputs;
    c["k"] = config_.k;
    c["metrics"] = config_.metrics;
    c["languages"] = config_.languages;
    c["correlation"] = config_.correlation;
    c["seed"] = config_.seed;
    c["min_survivors"] = config_.min_survivors;
    c["cloud_aggregation"] = config_.cloud_aggregation;
    c["case_fallback"] = config_.case_fallback;
    c["permutations"] = config_.permutations;
    c["removed_domains"] = config_.removed_domains;
    c["trials"] = config_.trials;
    c["shuffle_pair"] = config_.shuffle_pair;
    c["max_components"] = config_.max_components;
    c["repeats"] = config_.repeats;
    c["polysemy_measure"] = config_.polysemy_measure;
    return c;
  }

  Json input_digests() const {
    Json out = Json::object();
    for (const auto& [label, p] : config_.inputs()) {
      out[label] = {{"path", p.lexically_relative(config_.base_dir).generic_string()},
                    {"sha256", sha256_file(p)}};
    }
    return out;
  }

 private:
  std::shared_ptr<const NeighborIndex> load_index(int kind, const std::string& lang,
                                                  const fs::path& path) {
    const auto forms = lexicon_.forms(lang);
    const FormSet keep(forms.begin(), forms.end());
    LoadDiagnostics restrict_diag;
    std::shared_ptr<const NeighborIndex> index;
    if (kind == 2) {
      LoadedStore loaded = load_clouds(path, lang, detect_cloud_format(path));
      note(path, loaded.diagnostics);
      PointCloudStore store =
          loaded.store.restrict_to_lexicon(lexicon_, config_.case_fallback, &restrict_diag);
      index = std::make_shared<CloudIndex>(std::move(store), aggregation_);
    } else {
      LoadedSpace loaded = load_vectors(path, lang, &keep);
      note(path, loaded.diagnostics);
      VectorSpace space =
          loaded.space.restrict_to_lexicon(lexicon_, config_.case_fallback, &restrict_diag);
      index = std::make_shared<StaticIndex>(std::move(space));
    }
    for (const auto& m : restrict_diag.messages) {
      diagnostics_.push_back(fmt::format("{} ({}): {}", lang, path.filename().string(), m));
    }
    return index;
  }

  void note(const fs::path& path, const LoadDiagnostics& d) {
    for (const auto& m : d.messages) {
      diagnostics_.push_back(fmt::format("{}: {}", path.filename().string(), m));
    }
  }

  PipelineConfig config_;
  std::ostream& err_;
  ConceptLexicon lexicon_;
  MetricConfig metric_config_;
  CloudAggregation aggregation_ = CloudAggregation::kMin;
  std::vector<Metric> metrics_;
  std::map<int, IndexMap> cache_;
  std::vector<std::string> diagnostics_;
};

std::string manifest(const Session& session, const std::string& command, const Json& extra,
                     const OutputDir& dir, const std::string& started) {
  Json doc;
  doc["tool"] = "lexalign";
  doc["version"] = kVersion;
  doc["command"] = command;
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  doc["config"] = session.config_echo();
  doc["inputs"] = session.input_digests();
  doc["outputs"] = std::vector<std::string>(dir.written().begin(), dir.written().end());
  doc["diagnostics"] = session.diagnostics();
  doc["warnings"] = session.config().warnings;
  doc["timing"] = {{"started_utc", started}, {"finished_utc", utc_now()}};
  return doc.dump(2) + "\n";
}

std::string table_csv(const AlignmentTable& table) {
  std::ostringstream out;
  write_table_csv(out, table);
  return out.str();
}

AlignmentTable pair_subset(const AlignmentTable& table, const LanguagePair& pair) {
  AlignmentTable out;
  out.k = table.k;
  out.provenance = table.provenance;
  for (const auto& [key, cell] : table.cells()) {
    if (cell.pair == pair) out.insert(cell);
  }
  return out;
}

// ---------------------------------------------------------------------------
// compute

int cmd_compute(Session& session, std::ostream& out) {
  const std::string started = utc_now();
  OutputDir dir(session.config().output, "compute in progress or failed");
  AlignmentTable table = session.compute_all();
  table.provenance["lexicon_sha256"] = sha256_file(session.config().lexicon);
  dir.write("alignment.csv", table_csv(table));
  dir.write("alignment.json", table_to_json(table));
  for (const auto& pair : table.pairs()) {
    dir.write("pairs/" + safe_name(pair.label()) + ".csv", table_csv(pair_subset(table, pair)));
  }
  Json extra;
  extra["cells"] = table.size();
  extra["scored"] = table.scored();
  dir.finish(manifest(session, "compute", extra, dir, started));
  out << fmt::format("computed {} cells ({} scored, {} gaps) over {} pairs into {}\n",
                     table.size(), table.scored(), table.size() - table.scored(),
                     table.pairs().size(), dir.root().string());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

Metric snc_metric(const Session& session) {
  for (Metric m : session.metrics()) {
    if (m != Metric::kNeighborsOverlap) return m;
  }
  throw ConfigError("shuffle validation needs an SNC metric in [run] metrics");
}

void write_report(OutputDir& dir, const std::string& stem, const ValidationReport& report) {
  dir.write(stem + ".json", report.to_json());
  dir.write(stem + ".csv", report.records_csv());
}

int cmd_validate(Session& session, const std::string& kind, std::ostream& out) {
  const std::string started = utc_now();
  const auto& cfg = session.config();
  OutputDir dir(cfg.output / "validate" / kind, "validation in progress or failed");
  Json extra;
  extra["kind"] = kind;
  extra["seed"] = cfg.seed;

  if (kind == "shuffle") {
    const Metric metric = snc_metric(session);
    const IndexMap& indexes = session.indexes(metric);
    std::vector<LanguagePair> pairs;
    if (!cfg.shuffle_pair.empty()) {
      pairs.push_back(LanguagePair::of(cfg.shuffle_pair[0], cfg.shuffle_pair[1]));
    } else {
      pairs = session.pairs(metric);
    }
    std::vector<std::string> concepts;
    for (const auto& c : session.lexicon().concepts()) concepts.push_back(c.id);
    ShuffleConfig sc;
    sc.permutations = cfg.permutations;
    sc.seed = cfg.seed;
    sc.jobs = cfg.jobs;
    for (const auto& pair : pairs) {
      auto a = indexes.find(pair.a);
      auto b = indexes.find(pair.b);
      if (a == indexes.end() || b == indexes.end()) {
        throw Error(ErrorCode::kUnknownLanguage, "shuffle pair " + pair.label() + " not loaded");
      }
      const ValidationReport report =
          shuffle_baseline(concepts, Side{a->second.get(), nullptr}, Side{b->second.get(), nullptr},
                           session.lexicon(), session.metric_config(), sc);
      write_report(dir, "shuffle_" + safe_name(pair.label()), report);
      out << fmt::format("shuffle {} {}: mean r = {}\n", to_string(metric), pair.label(),
                         format_real(report.statistics.count("r_mean")
                                         ? report.statistics.at("r_mean")
                                         : 0.0));
    }
    extra["metric"] = std::string(to_string(metric));
  } else if (kind == "sensitivity") {
    const Metric metric = session.metrics().front();
    const AlignmentTable baseline = session.compute(metric);
    for (std::size_t j : cfg.removed_domains) {
      SensitivityConfig sc;
      sc.removed_domains = j;
      sc.trials = cfg.trials;
      sc.seed = cfg.seed;
      sc.jobs = cfg.jobs;
      const ValidationReport report = sensitivity(baseline, session.request(metric),
                                                  session.lexicon(), session.indexes(metric), sc);
      write_report(dir, fmt::format("sensitivity_j{}", j), report);
      const auto it = report.statistics.find("r_min");
      out << fmt::format("sensitivity {} j={}: r_min = {}\n", to_string(metric), j,
                         it == report.statistics.end() ? "n/a" : format_real(it->second));
    }
    extra["metric"] = std::string(to_string(metric));
  } else {
    if (!cfg.gaps || !cfg.concept_map) {
      throw ConfigError("validate --kind gaps needs [gaps] inventory and concept_map");
    }
    const GapInventory inventory = load_gaps(*cfg.gaps, *cfg.concept_map);
    std::vector<std::string> concepts;
    for (const auto& c : inventory.filtered_concepts()) {
      if (session.lexicon().has_concept(c)) concepts.push_back(c);
    }
    std::ostringstream lambdas;
    lambdas << "lang_a,lang_b,lambda\n";
    std::vector<std::string> langs(inventory.languages().begin(), inventory.languages().end());
    for (std::size_t i = 0; i < langs.size(); ++i) {
      for (std::size_t j = i + 1; j < langs.size(); ++j) {
        lambdas << langs[i] << ',' << langs[j] << ','
                << format_real(gap_alignment(langs[i], langs[j], inventory)) << '\n';
      }
    }
    dir.write("lambda.csv", lambdas.str());
    for (Metric metric : session.metrics()) {
      const AlignmentTable table = session.compute(metric, concepts);
      const ValidationReport report = validate_against_gaps(table, metric, inventory);
      write_report(dir, "gaps_" + safe_name(to_string(metric)), report);
      out << fmt::format("gaps {}: r = {} (p = {}) over {} pairs\n", to_string(metric),
                         format_real(report.statistics.at("r")),
                         format_real(report.statistics.at("p")),
                         report.statistics.at("pairs"));
    }
    extra["subdomains"] = inventory.subdomains().size();
    extra["filtered_concepts"] = concepts.size();
  }
  dir.finish(manifest(session, "validate", extra, dir, started));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

Json feature_json(const FeatureCorrelation& f) {
  return {{"feature", f.feature}, {"r", f.r},         {"p", f.p},
          {"n", f.n},             {"vector_size", f.vector_size}, {"feature_size", f.feature_size}};
}

struct FeatureRow {
  std::string metric;
  std::string level;
  std::string feature;
  std::optional<FeatureCorrelation> result;
  std::string error;
};

void write_feature_rows(OutputDir& dir, const std::string& stem,
                        const std::vector<FeatureRow>& rows) {
  std::ostringstream csv;
  csv << "metric,level,feature,r,p,n,vector_size,feature_size,error\n";
  Json doc = Json::array();
  for (const auto& row : rows) {
    if (row.result) {
      const auto& f = *row.result;
      csv << fmt::format("{},{},{},{},{},{},{},{},\n", row.metric, row.level, row.feature,
                         format_real(f.r), format_real(f.p), f.n, f.vector_size, f.feature_size);
      Json j = feature_json(f);
      j["metric"] = row.metric;
      j["level"] = row.level;
      doc.push_back(std::move(j));
    } else {
      csv << fmt::format("{},{},{},,,,,,{}\n", row.metric, row.level, row.feature, row.error);
      doc.push_back({{"metric", row.metric},
                     {"level", row.level},
                     {"feature", row.feature},
                     {"error", row.error}});
    }
  }
  dir.write(stem + ".csv", csv.str());
  dir.write(stem + ".json", doc.dump(2) + "\n");
}

FeatureRow correlate_row(const AggregatedVector& vector, const FeatureSeries& series,
                         const ConceptLexicon& lexicon) {
  FeatureRow row{vector.label, std::string(to_string(vector.level)), series.name, {}, {}};
  try {
    row.result = feature_correlation(vector, series, &lexicon);
  } catch (const Error& e) {
    row.error = std::string(to_string(e.code()));
  }
  return row;
}

int cmd_analyze(Session& session, const std::string& analysis, std::ostream& out) {
  const std::string started = utc_now();
  const auto& cfg = session.config();
  const auto& lexicon = session.lexicon();

  if (analysis == "features" && !cfg.concept_features && !cfg.coordinates && !cfg.traits) {
    throw ConfigError(
        "analyze --analysis features needs a features CSV: set [features] concepts, "
        "coordinates or traits in the config");
  }
  if (analysis == "norms" && !cfg.norms) {
    throw ConfigError("analyze --analysis norms needs [features] norms in the config");
  }
  if (analysis == "polysemy" && cfg.clouds.size() < 2) {
    throw ConfigError("analyze --analysis polysemy needs [clouds] for at least two languages");
  }

  OutputDir dir(cfg.output / "analyze" / analysis, "analysis in progress or failed");
  Json extra;
  extra["analysis"] = analysis;
  const std::vector<AggregationLevel> levels{AggregationLevel::kConcept, AggregationLevel::kDomain};

  if (analysis == "polysemy") {
    GmmConfig gmm;
    gmm.max_components = cfg.max_components;
    gmm.repeats = cfg.repeats;
    gmm.seed = cfg.seed;
    const PolysemyMeasure measure = parse_polysemy_measure(cfg.polysemy_measure);
    std::map<std::string, LanguagePolysemy> per_language;
    std::vector<std::string> langs;
    for (const auto& [lang, p] : cfg.clouds) {
      if (!cfg.languages.empty() &&
          std::find(cfg.languages.begin(), cfg.languages.end(), lang) == cfg.languages.end()) {
        continue;
      }
      langs.push_back(lang);
      per_language.emplace(lang,
                           language_polysemy(session.cloud_store(lang), measure, gmm, cfg.jobs));
    }
    std::ostringstream lang_csv;
    lang_csv << "language,measure,mean,words,excluded\n";
    for (const auto& [lang, p] : per_language) {
      lang_csv << fmt::format("{},{},{},{},{}\n", lang, to_string(measure), format_real(p.mean),
                              p.words, p.excluded);
    }
    dir.write("polysemy_languages.csv", lang_csv.str());

    std::ostringstream pair_csv;
    pair_csv << "lang_a,lang_b,measure,value\n";
    std::map<LanguagePair, double> pair_scores;
    for (std::size_t i = 0; i < langs.size(); ++i) {
      for (std::size_t j = i + 1; j < langs.size(); ++j) {
        const double v = (per_language.at(langs[i]).mean + per_language.at(langs[j]).mean) / 2.0;
        pair_scores.emplace(LanguagePair{langs[i], langs[j]}, v);
        pair_csv << fmt::format("{},{},{},{}\n", langs[i], langs[j], to_string(measure),
                                format_real(v));
      }
    }
    dir.write("polysemy_pairs.csv", pair_csv.str());

    Json correlations = Json::array();
    const AlignmentTable table = session.compute_all();
    for (Metric metric : session.metrics()) {
      std::vector<double> x, y;
      for (const auto& [pair, score] : pair_scores) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& [key, cell] : table.cells()) {
          if (cell.metric == metric && cell.pair == pair && cell.value) {
            sum += *cell.value;
            ++n;
          }
        }
        if (n == 0) continue;
        x.push_back(sum / static_cast<double>(n));
        y.push_back(score);
      }
      Json entry{{"metric", std::string(to_string(metric))}, {"pairs", x.size()}};
      try {
        const CorrelationResult c = correlate(CorrelationMethod::kPearson, x, y);
        entry["r"] = c.r;
        entry["p"] = c.p;
      } catch (const Error& e) {
        entry["error"] = std::string(to_string(e.code()));
      }
      correlations.push_back(std::move(entry));
    }
    Json doc{{"measure", std::string(to_string(measure))},
             {"seed", cfg.seed},
             {"correlations", correlations}};
    dir.write("polysemy.json", doc.dump(2) + "\n");
    out << fmt::format("polysemy ({}) over {} languages\n", to_string(measure), langs.size());
  } else {
    const AlignmentTable table = session.compute_all();
    std::map<std::pair<Metric, AggregationLevel>, AggregatedVector> vectors;
    for (Metric metric : session.metrics()) {
      for (AggregationLevel level : levels) {
        vectors.emplace(std::make_pair(metric, level), aggregate(table, metric, level, lexicon));
      }
    }

    if (analysis == "aggregate") {
      for (const auto& [key, v] : vectors) {
        const std::string stem =
            fmt::format("aggregate_{}_{}", safe_name(v.label), to_string(v.level));
        dir.write(stem + ".csv", v.to_csv());
        dir.write(stem + ".json", v.to_json());
        if (v.level == AggregationLevel::kConcept && !v.keys.empty()) {
          const auto boxes = domain_boxplots(v, lexicon);
          dir.write(fmt::format("boxplots_{}.json", safe_name(v.label)), boxplots_json(boxes));
        }
      }
      out << fmt::format("aggregated {} metric(s)\n", session.metrics().size());
    } else if (analysis == "matrix") {
      for (AggregationLevel level : levels) {
        std::vector<AggregatedVector> list;
        for (Metric metric : session.metrics()) list.push_back(vectors.at({metric, level}));
        const CorrelationMatrix matrix =
            metric_correlation_matrix(list, session.metric_config().correlation);
        const std::string stem = fmt::format("matrix_{}", to_string(level));
        dir.write(stem + ".json", matrix.heatmap_json());
        std::ostringstream csv;
        csv << "metric";
        for (const auto& l : matrix.labels) csv << ',' << l;
        csv << '\n';
        for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
          csv << matrix.labels[i];
          for (double r : matrix.r[i]) csv << ',' << format_real(r);
          csv << '\n';
        }
        dir.write(stem + ".csv", csv.str());
      }
      out << fmt::format("correlation matrices over {} metric(s)\n", session.metrics().size());
    } else if (analysis == "features") {
      std::vector<FeatureSeries> series;
      if (cfg.concept_features) {
        const auto features = load_concept_features(*cfg.concept_features);
        for (const char* name : {"frequency_log", "concreteness", "rate_of_change"}) {
          series.push_back(concept_feature_series(features, name));
        }
      }
      std::vector<LanguagePair> pairs = table.pairs();
      if (cfg.coordinates) series.push_back(geodesic_series(load_coordinates(*cfg.coordinates), pairs));
      if (cfg.traits) series.push_back(cultural_series(load_traits(*cfg.traits), pairs));
      std::vector<FeatureRow> rows;
      for (const auto& [key, v] : vectors) {
        for (const auto& s : series) rows.push_back(correlate_row(v, s, lexicon));
      }
      write_feature_rows(dir, "features", rows);

      // Joint regression of each vector on every feature, over fully covered keys.
      std::ostringstream reg;
      reg << "metric,level,predictors,n,r_squared,adjusted_r_squared,error\n";
      for (const auto& [key, v] : vectors) {
        std::vector<double> response;
        std::vector<std::vector<double>> predictors(series.size());
        for (std::size_t i = 0; i < v.keys.size(); ++i) {
          std::vector<double> row;
          for (const auto& s : series) {
            const AggregateKey& k = v.keys[i];
            std::optional<double> value;
            if (auto it = s.by_pair.find(k.pair); it != s.by_pair.end()) value = it->second;
            if (!value && v.level == AggregationLevel::kConcept) {
              if (auto it = s.by_concept.find(k.item); it != s.by_concept.end()) value = it->second;
            }
            if (!value && v.level == AggregationLevel::kDomain) {
              double sum = 0.0;
              std::size_t n = 0;
              for (const auto& c : lexicon.concepts_in_domain(k.item)) {
                if (auto it = s.by_concept.find(c); it != s.by_concept.end()) {
                  sum += it->second;
                  ++n;
                }
              }
              if (n > 0) value = sum / static_cast<double>(n);
            }
            if (!value) break;
            row.push_back(*value);
          }
          if (row.size() != series.size()) continue;
          response.push_back(v.values[i]);
          for (std::size_t s = 0; s < row.size(); ++s) predictors[s].push_back(row[s]);
        }
        std::vector<std::string> names;
        for (const auto& s : series) names.push_back(s.name);
        try {
          const RegressionFit fit = linear_regression(response, predictors);
          reg << fmt::format("{},{},{},{},{},{},\n", v.label, to_string(v.level),
                             fmt::join(names, ";"), response.size(), format_real(fit.r_squared),
                             format_real(fit.adjusted_r_squared));
        } catch (const Error& e) {
          reg << fmt::format("{},{},{},{},,,{}\n", v.label, to_string(v.level),
                             fmt::join(names, ";"), response.size(), to_string(e.code()));
        }
      }
      dir.write("regression.csv", reg.str());
      out << fmt::format("feature correlations: {} rows\n", rows.size());
    } else {
      const FeatureSeries norms = load_norms(*cfg.norms);
      std::vector<FeatureRow> rows;
      for (const auto& [key, v] : vectors) rows.push_back(correlate_row(v, norms, lexicon));
      write_feature_rows(dir, "norms", rows);
      out << fmt::format("norm correlations: {} rows\n", rows.size());
    }
  }
  dir.finish(manifest(session, "analyze", extra, dir, started));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// neighbors

int cmd_neighbors(Session& session, const std::string& concept_id, const std::string& pair_text,
                  std::size_t top_n, std::ostream& out) {
  const std::string started = utc_now();
  const auto dash = pair_text.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == pair_text.size()) {
    throw ConfigError("--pair must look like 'en-nl'");
  }
  const std::string first = pair_text.substr(0, dash);
  const std::string second = pair_text.substr(dash + 1);
  const Metric metric = session.metrics().front();
  const IndexMap& indexes = session.indexes(metric);
  auto a = indexes.find(first);
  auto b = indexes.find(second);
  if (a == indexes.end() || b == indexes.end()) {
    throw Error(ErrorCode::kUnknownLanguage, "pair " + pair_text + " is not loaded");
  }
  const Side sa{a->second.get(), nullptr};
  const Side sb{b->second.get(), nullptr};
  const SncProfile forward = snc_profile(concept_id, sa, sb, session.lexicon(), top_n);
  const SncProfile backward = snc_profile(concept_id, sb, sa, session.lexicon(), top_n);

  OutputDir dir(session.config().output / "neighbors", "neighbor dump in progress or failed");
  std::ostringstream tsv;
  tsv << "direction\trank\tneighbor\tsimilarity\ttranslation\ttarget_similarity\tstatus\n";
  Json doc;
  doc["concept_id"] = concept_id;
  doc["metric"] = std::string(to_string(metric));
  doc["top_n"] = top_n;
  Json sides = Json::array();
  for (const SncProfile* p : {&forward, &backward}) {
    const std::string direction = p->source_language + "->" + p->target_language;
    Json side;
    side["direction"] = direction;
    side["source_form"] = p->source_form;
    side["target_form"] = p->target_form;
    side["shortfall"] = p->shortfall;
    side["survivors"] = p->survivors();
    Json rows = Json::array();
    std::size_t rank = 0;
    for (const auto& e : p->entries) {
      ++rank;
      tsv << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", direction, rank, e.neighbor,
                         format_real(e.source_similarity), e.translation.value_or(""),
                         e.target_similarity ? format_real(*e.target_similarity) : "",
                         to_string(e.status));
      Json row{{"rank", rank},
               {"neighbor", e.neighbor},
               {"similarity", e.source_similarity},
               {"status", std::string(to_string(e.status))}};
      row["translation"] = e.translation ? Json(*e.translation) : Json(nullptr);
      row["target_similarity"] = e.target_similarity ? Json(*e.target_similarity) : Json(nullptr);
      rows.push_back(std::move(row));
    }
    side["neighbors"] = std::move(rows);
    sides.push_back(std::move(side));
    if (p->shortfall) {
      tsv << fmt::format("# {}: shortfall, {} of {} neighbors available\n", direction,
                         p->entries.size(), top_n);
    }
  }
  doc["sides"] = std::move(sides);
  const std::string stem =
      fmt::format("{}__{}", safe_name(concept_id), safe_name(LanguagePair::of(first, second).label()));
  dir.write(stem + ".tsv", tsv.str());
  dir.write(stem + ".json", doc.dump(2) + "\n");
  Json extra{{"concept_id", concept_id}, {"pair", pair_text}, {"top_n", top_n}};
  dir.finish(manifest(session, "neighbors", extra, dir, started));
  out << tsv.str();
  return kExitOk;
}

PipelineConfig resolve_config(const Overrides& o) {
  PipelineConfig config = load_config(o.config);
  if (o.seed) config.seed = *o.seed;
  if (o.jobs) config.jobs = std::max<std::size_t>(*o.jobs, 1);
  if (o.k) {
    if (*o.k == 0) throw ConfigError("--k must be positive");
    config.k = *o.k;
    config.warnings.erase(
        std::remove_if(config.warnings.begin(), config.warnings.end(),
                       [](const std::string& w) { return w.starts_with("k = "); }),
        config.warnings.end());
    if (config.k != 10 && config.k != 50 && config.k != 100 && config.k != 1000) {
      config.warnings.push_back(
          fmt::format("k = {} is outside the usual {{10, 50, 100, 1000}}", config.k));
    }
  }
  if (!o.metric.empty()) config.metrics = split_list(o.metric);
  if (!o.output.empty()) config.output = fs::absolute(o.output).lexically_normal();
  return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-lingual semantic alignment toolkit", "lexalign"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "Pipeline config file (TOML subset)")->required();
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--jobs", o.jobs, "Worker threads");
  app.add_option("--k", o.k, "Neighborhood size");
  app.add_option("--metric", o.metric, "Comma-separated metrics: NO,SNC-static,SNC-ave,SNC-cloud");
  app.add_option("--output", o.output, "Output directory");

  auto* compute = app.add_subcommand("compute", "Compute alignment tables");
  std::string kind;
  auto* validate = app.add_subcommand("validate", "Run a validation protocol");
  validate->add_option("--kind", kind, "shuffle | sensitivity | gaps")
      ->required()
      ->check(CLI::IsMember({"shuffle", "sensitivity", "gaps"}));
  std::string analysis;
  auto* analyze = app.add_subcommand("analyze", "Run an analysis");
  analyze->add_option("--analysis", analysis, "aggregate | matrix | features | polysemy | norms")
      ->required()
      ->check(CLI::IsMember({"aggregate", "matrix", "features", "polysemy", "norms"}));
  std::string concept_id, pair;
  std::size_t top_n = 10;
  auto* neighbors = app.add_subcommand("neighbors", "Dump ranked neighbors of a concept");
  neighbors->add_option("--concept", concept_id, "Concept id")->required();
  neighbors->add_option("--pair", pair, "Language pair, e.g. en-nl")->required();
  neighbors->add_option("--top-n", top_n, "Neighbors per side")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    Session session(resolve_config(o), err);
    if (compute->parsed()) return cmd_compute(session, out);
    if (validate->parsed()) return cmd_validate(session, kind, out);
    if (analyze->parsed()) return cmd_analyze(session, analysis, out);
    if (neighbors->parsed()) return cmd_neighbors(session, concept_id, pair, top_n, out);
    err << "error: no command given\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MissingInput& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << (is_data_error(e.code()) ? "data error: " : "compute error: ") << e.what() << '\n';
    return is_data_error(e.code()) ? kExitData : kExitCompute;
  } catch (const std::exception& e) {
    err << "compute error: " << e.what() << '\n';
    return kExitCompute;
  }
}

}  // namespace lexalign::cli
