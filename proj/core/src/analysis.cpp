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

#include "lexalign/analysis.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "lexalign/error.hpp"
#include "lexalign/geo.hpp"
#include "lexalign/text.hpp"

namespace lexalign {

namespace {

constexpr double kResidualFloor = 1e-24;

std::size_t check_series(std::span<const double> response,
                         std::span<const std::vector<double>> predictors) {
  for (const auto& p : predictors) {
    if (p.size() != response.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  fmt::format("series of length {} vs {}", p.size(), response.size()));
    }
  }
  return response.size();
}

Eigen::MatrixXd design(std::size_t n, std::span<const std::vector<double>> columns) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size() + 1));
  x.col(0).setOnes();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = columns[j][i];
    }
  }
  return x;
}

Eigen::ColPivHouseholderQR<Eigen::MatrixXd> factor(const Eigen::MatrixXd& x) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-12);
  if (qr.rank() < x.cols()) {
    throw Error(ErrorCode::kRankDeficient,
                fmt::format("design matrix rank {} < {}", qr.rank(), x.cols()));
  }
  return qr;
}

Eigen::VectorXd as_vector(std::span<const double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

double centered_ss(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).square().sum();
}

std::string csv_field(const std::vector<std::string>& fields, std::size_t i) {
  return i < fields.size() ? fields[i] : std::string();
}

std::optional<double> optional_real(const std::string& text, const std::string& where) {
  if (text.empty()) return std::nullopt;
  auto v = parse_real(text);
  if (!v) throw Error(ErrorCode::kMalformedRow, fmt::format("{}: bad number '{}'", where, text));
  return v;
}

double required_real(const std::string& text, const std::string& where) {
  auto v = optional_real(text, where);
  if (!v) throw Error(ErrorCode::kMalformedRow, where + ": missing number");
  return *v;
}

void expect_header(const DelimitedFile& file, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
  if (file.header != expected) {
    throw Error(ErrorCode::kBadHeader,
                fmt::format("{}: expected header '{}'", path.string(), fmt::join(expected, ",")));
  }
}

}  // namespace

std::string_view to_string(AggregationLevel level) noexcept {
  return level == AggregationLevel::kConcept ? "concept" : "domain";
}

AggregationLevel parse_level(std::string_view text) {
  if (text == "concept") return AggregationLevel::kConcept;
  if (text == "domain") return AggregationLevel::kDomain;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown aggregation level '{}'", text));
}

// ---------------------------------------------------------------------------
// Aggregation

std::optional<double> AggregatedVector::find(const AggregateKey& key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return std::nullopt;
  return values[static_cast<std::size_t>(it - keys.begin())];
}

std::string AggregatedVector::to_csv() const {
  std::ostringstream out;
  out << "lang_a,lang_b," << to_string(level) << ",value\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out << keys[i].pair.a << ',' << keys[i].pair.b << ',' << keys[i].item << ','
        << format_real(values[i]) << '\n';
  }
  return out.str();
}

std::string AggregatedVector::to_json() const {
  nlohmann::ordered_json doc;
  doc["label"] = label;
  doc["metric"] = std::string(to_string(metric));
  doc["level"] = std::string(to_string(level));
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    entries.push_back({{"lang_a", keys[i].pair.a},
                       {"lang_b", keys[i].pair.b},
                       {std::string(to_string(level)), keys[i].item},
                       {"value", values[i]}});
  }
  doc["entries"] = std::move(entries);
  doc["diagnostics"] = diagnostics;
  return doc.dump(2) + "\n";
}

AggregatedVector aggregate(const AlignmentTable& table, Metric metric, AggregationLevel level,
                           const ConceptLexicon& lexicon) {
  AggregatedVector out;
  out.label = std::string(to_string(metric));
  out.metric = metric;
  out.level = level;
  std::map<AggregateKey, std::pair<double, std::size_t>> sums;
  std::size_t cells = 0;
  for (const auto& [key, cell] : table.cells()) {
    if (cell.metric != metric) continue;
    ++cells;
    AggregateKey target{cell.pair, level == AggregationLevel::kConcept
                                       ? cell.concept_id
                                       : lexicon.domain_of(cell.concept_id)};
    auto& slot = sums[target];
    if (cell.value) {
      slot.first += *cell.value;
      ++slot.second;
    }
  }
  if (cells == 0) {
    throw Error(ErrorCode::kEmptyTable,
                fmt::format("no {} cells to aggregate", to_string(metric)));
  }
  for (const auto& [key, slot] : sums) {
    if (slot.second == 0) {
      out.diagnostics.push_back(fmt::format("{} {}: no scored values, entry omitted",
                                            key.pair.label(), key.item));
      continue;
    }
    out.keys.push_back(key);
    out.values.push_back(level == AggregationLevel::kConcept
                             ? slot.first
                             : slot.first / static_cast<double>(slot.second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correlation matrix

std::string CorrelationMatrix::heatmap_json() const {
  nlohmann::ordered_json doc;
  doc["labels"] = labels;
  doc["r"] = r;
  doc["p"] = p;
  doc["common_keys"] = common_keys;
  doc["input_sizes"] = input_sizes;
  return doc.dump(2) + "\n";
}

CorrelationMatrix metric_correlation_matrix(std::span<const AggregatedVector> vectors,
                                            CorrelationMethod method) {
  if (vectors.empty()) throw Error(ErrorCode::kNoCommonKeys, "no vectors to correlate");
  std::vector<AggregateKey> common = vectors.front().keys;
  for (const auto& v : vectors.subspan(1)) {
    std::vector<AggregateKey> next;
    std::set_intersection(common.begin(), common.end(), v.keys.begin(), v.keys.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  if (common.empty()) throw Error(ErrorCode::kNoCommonKeys, "vectors share no keys");

  const std::size_t m = vectors.size();
  std::vector<std::vector<double>> columns(m);
  CorrelationMatrix out;
  out.common_keys = common.size();
  for (std::size_t i = 0; i < m; ++i) {
    out.labels.push_back(vectors[i].label);
    out.input_sizes.push_back(vectors[i].size());
    for (const auto& key : common) columns[i].push_back(*vectors[i].find(key));
  }
  out.r.assign(m, std::vector<double>(m, 1.0));
  out.p.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const CorrelationResult c = correlate(method, columns[i], columns[j]);
      out.r[i][j] = out.r[j][i] = c.r;
      out.p[i][j] = out.p[j][i] = c.p;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Features

FeatureCorrelation feature_correlation(const AggregatedVector& vector,
                                       const FeatureSeries& feature,
                                       const ConceptLexicon* lexicon) {
  const bool domain = vector.level == AggregationLevel::kDomain;
  if (domain && lexicon == nullptr && (!feature.by_concept.empty() || !feature.by_key.empty())) {
    throw Error(ErrorCode::kInvalidArgument,
                "domain-level join of concept-keyed features needs the lexicon");
  }
  auto domain_mean = [&](const AggregateKey& key) -> std::optional<double> {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& c : lexicon->concepts_in_domain(key.item)) {
      if (auto it = feature.by_key.find(AggregateKey{key.pair, c}); it != feature.by_key.end()) {
        sum += it->second;
        ++n;
      } else if (auto jt = feature.by_concept.find(c); jt != feature.by_concept.end()) {
        sum += jt->second;
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  auto lookup = [&](const AggregateKey& key) -> std::optional<double> {
    if (auto it = feature.by_key.find(key); it != feature.by_key.end()) return it->second;
    if (auto it = feature.by_pair.find(key.pair); it != feature.by_pair.end()) return it->second;
    if (!domain) {
      if (auto it = feature.by_concept.find(key.item); it != feature.by_concept.end()) {
        return it->second;
      }
      return std::nullopt;
    }
    return domain_mean(key);
  };

  std::vector<double> x, y;
  for (std::size_t i = 0; i < vector.keys.size(); ++i) {
    if (auto f = lookup(vector.keys[i])) {
      x.push_back(vector.values[i]);
      y.push_back(*f);
    }
  }
  FeatureCorrelation out;
  out.feature = feature.name;
  out.n = x.size();
  out.vector_size = vector.size();
  out.feature_size = feature.size();
  if (x.size() < 3) {
    throw Error(ErrorCode::kInsufficientOverlap,
                fmt::format("feature '{}' joins {} of {} keys; need 3", feature.name, x.size(),
                            vector.size()));
  }
  const CorrelationResult c = correlate(CorrelationMethod::kPearson, x, y);
  out.r = c.r;
  out.p = c.p;
  return out;
}

CorrelationResult partial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const std::vector<double>> covariates) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} vs {}", x.size(), y.size()));
  }
  const std::size_t n = check_series(x, covariates);
  if (n < covariates.size() + 3) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("{} samples for {} covariates", n, covariates.size()));
  }
  const Eigen::MatrixXd design_matrix = design(n, covariates);
  const auto qr = factor(design_matrix);
  auto residual = [&](std::span<const double> v) {
    const Eigen::VectorXd values = as_vector(v);
    const Eigen::VectorXd fitted = design_matrix * qr.solve(values);
    Eigen::VectorXd res = values - fitted;
    const double total = centered_ss(values);
    if (total == 0.0 || res.squaredNorm() <= kResidualFloor * total) {
      throw Error(ErrorCode::kConstantInput, "zero residual variance after projection");
    }
    return std::vector<double>(res.data(), res.data() + res.size());
  };
  const auto rx = residual(x);
  const auto ry = residual(y);
  CorrelationResult out;
  out.n = n;
  out.r = pearson(rx, ry);
  out.p = t_test_p_value(out.r, static_cast<double>(n) - 2.0 -
                                     static_cast<double>(covariates.size()));
  return out;
}

RegressionFit linear_regression(std::span<const double> response,
                                std::span<const std::vector<double>> predictors) {
  const std::size_t n = check_series(response, predictors);
  const std::size_t p = predictors.size();
  if (n <= p + 1) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("{} samples for {} predictors", n, p));
  }
  const Eigen::MatrixXd x = design(n, predictors);
  const auto qr = factor(x);
  const Eigen::VectorXd yv = as_vector(response);
  const Eigen::VectorXd beta = qr.solve(yv);
  const double total = centered_ss(yv);
  if (total == 0.0) throw Error(ErrorCode::kConstantInput, "constant response");
  const double rss = (yv - x * beta).squaredNorm();
  RegressionFit fit;
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.r_squared = std::clamp(1.0 - rss / total, 0.0, 1.0);
  const double nn = static_cast<double>(n);
  fit.adjusted_r_squared =
      1.0 - (1.0 - fit.r_squared) * (nn - 1.0) / (nn - static_cast<double>(p) - 1.0);
  return fit;
}

double adjusted_r_squared(std::span<const double> response,
                          std::span<const std::vector<double>> predictors) {
  return linear_regression(response, predictors).adjusted_r_squared;
}

// ---------------------------------------------------------------------------
// Feature tables

std::map<std::string, ConceptFeatures> load_concept_features(const std::filesystem::path& path) {
  const DelimitedFile file = read_delimited(path, ',');
  expect_header(file, {"concept_id", "frequency_log", "concreteness", "rate_of_change"}, path);
  std::map<std::string, ConceptFeatures> out;
  for (const auto& record : file.records) {
    const auto where = fmt::format("{}:{}", path.string(), record.line);
    if (record.fields.empty() || record.fields[0].empty() || record.fields.size() > 4) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected concept_id and up to 3 values");
    }
    ConceptFeatures f;
    f.frequency_log = optional_real(csv_field(record.fields, 1), where);
    f.concreteness = optional_real(csv_field(record.fields, 2), where);
    f.rate_of_change = optional_real(csv_field(record.fields, 3), where);
    if (!out.emplace(record.fields[0], f).second) {
      throw Error(ErrorCode::kMalformedRow, where + ": duplicate concept " + record.fields[0]);
    }
  }
  return out;
}

std::map<std::string, GeoPoint> load_coordinates(const std::filesystem::path& path) {
  const DelimitedFile file = read_delimited(path, ',');
  expect_header(file, {"language", "lat", "lon"}, path);
  std::map<std::string, GeoPoint> out;
  for (const auto& record : file.records) {
    const auto where = fmt::format("{}:{}", path.string(), record.line);
    if (record.fields.size() != 3 || record.fields[0].empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected language,lat,lon");
    }
    GeoPoint point{required_real(record.fields[1], where), required_real(record.fields[2], where)};
    if (point.lat < -90.0 || point.lat > 90.0 || point.lon < -180.0 || point.lon > 180.0) {
      throw Error(ErrorCode::kInvalidCoordinate,
                  fmt::format("{}: ({}, {}) out of range", where, point.lat, point.lon));
    }
    if (!out.emplace(record.fields[0], point).second) {
      throw Error(ErrorCode::kMalformedRow, where + ": duplicate language " + record.fields[0]);
    }
  }
  return out;
}

std::map<std::string, TraitVector> load_traits(const std::filesystem::path& path) {
  const DelimitedFile file = read_delimited(path, ',');
  if (file.header.size() < 2 || file.header[0] != "language") {
    throw Error(ErrorCode::kBadHeader, path.string() + ": expected language,trait_1,...");
  }
  const std::size_t traits = file.header.size() - 1;
  std::map<std::string, TraitVector> out;
  for (const auto& record : file.records) {
    const auto where = fmt::format("{}:{}", path.string(), record.line);
    if (record.fields.size() != traits + 1 || record.fields[0].empty()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: expected {} fields", where, traits + 1));
    }
    TraitVector v;
    v.reserve(traits);
    for (std::size_t i = 1; i <= traits; ++i) {
      if (record.fields[i].empty()) {
        v.emplace_back(std::nullopt);
      } else {
        v.emplace_back(record.fields[i]);
      }
    }
    if (!out.emplace(record.fields[0], std::move(v)).second) {
      throw Error(ErrorCode::kMalformedRow, where + ": duplicate language " + record.fields[0]);
    }
  }
  return out;
}

FeatureSeries concept_feature_series(const std::map<std::string, ConceptFeatures>& features,
                                     std::string_view name) {
  std::optional<double> ConceptFeatures::*member = nullptr;
  if (name == "frequency_log") {
    member = &ConceptFeatures::frequency_log;
  } else if (name == "concreteness") {
    member = &ConceptFeatures::concreteness;
  } else if (name == "rate_of_change") {
    member = &ConceptFeatures::rate_of_change;
  } else {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown concept feature '{}'", name));
  }
  FeatureSeries series;
  series.name = std::string(name);
  for (const auto& [concept_id, f] : features) {
    if (const auto& v = f.*member) series.by_concept.emplace(concept_id, *v);
  }
  return series;
}

FeatureSeries geodesic_series(const std::map<std::string, GeoPoint>& coordinates,
                              std::span<const LanguagePair> pairs) {
  FeatureSeries series;
  series.name = "geo";
  for (const auto& pair : pairs) {
    auto a = coordinates.find(pair.a);
    auto b = coordinates.find(pair.b);
    if (a == coordinates.end() || b == coordinates.end()) continue;
    series.by_pair.emplace(pair, geodesic_distance(a->second, b->second));
  }
  return series;
}

FeatureSeries cultural_series(const std::map<std::string, TraitVector>& traits,
                              std::span<const LanguagePair> pairs) {
  FeatureSeries series;
  series.name = "culture";
  for (const auto& pair : pairs) {
    auto a = traits.find(pair.a);
    auto b = traits.find(pair.b);
    if (a == traits.end() || b == traits.end()) continue;
    try {
      series.by_pair.emplace(pair, cultural_distance(a->second, b->second));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoComparableTraits) throw;
    }
  }
  return series;
}

FeatureSeries load_norms(const std::filesystem::path& path) {
  const DelimitedFile file = read_delimited(path, ',');
  const std::vector<std::string> short_header{"concept_id", "score"};
  const std::vector<std::string> long_header{"concept_id", "lang_a", "lang_b", "score"};
  const bool keyed = file.header == long_header;
  if (!keyed && file.header != short_header) {
    throw Error(ErrorCode::kBadHeader,
                path.string() + ": expected concept_id,score or concept_id,lang_a,lang_b,score");
  }
  FeatureSeries series;
  series.name = path.stem().string();
  for (const auto& record : file.records) {
    const auto where = fmt::format("{}:{}", path.string(), record.line);
    const auto& f = record.fields;
    if (f.size() != file.header.size() || f[0].empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": wrong field count");
    }
    const double score = required_real(f.back(), where);
    bool inserted = false;
    if (keyed) {
      if (f[1].empty() || f[2].empty()) {
        throw Error(ErrorCode::kMalformedRow, where + ": empty language");
      }
      inserted = series.by_key.emplace(AggregateKey{LanguagePair::of(f[1], f[2]), f[0]}, score)
                     .second;
    } else {
      inserted = series.by_concept.emplace(f[0], score).second;
    }
    if (!inserted) throw Error(ErrorCode::kMalformedRow, where + ": duplicate key");
  }
  return series;
}

FeatureCorrelation external_norm_correlation(const AggregatedVector& vector,
                                             const std::filesystem::path& norms_path,
                                             const ConceptLexicon* lexicon) {
  return feature_correlation(vector, load_norms(norms_path), lexicon);
}

// ---------------------------------------------------------------------------
// Boxplots

BoxplotStats boxplot_stats(std::string label, std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInsufficientSamples, "boxplot of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxplotStats box;
  box.label = std::move(label);
  box.n = sorted.size();
  box.median = quantile_sorted(sorted, 0.5);
  box.q1 = quantile_sorted(sorted, 0.25);
  box.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = box.q3 - box.q1;
  const double low_fence = box.q1 - 1.5 * iqr;
  const double high_fence = box.q3 + 1.5 * iqr;
  box.whisker_low = box.q1;
  box.whisker_high = box.q3;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      box.outliers.push_back(v);
    } else {
      box.whisker_low = std::min(box.whisker_low, v);
      box.whisker_high = std::max(box.whisker_high, v);
    }
  }
  return box;
}

std::vector<BoxplotStats> domain_boxplots(const AggregatedVector& concept_level,
                                          const ConceptLexicon& lexicon) {
  if (concept_level.level != AggregationLevel::kConcept) {
    throw Error(ErrorCode::kInvalidArgument, "domain boxplots need a concept-level vector");
  }
  std::map<std::string, std::vector<double>> groups;
  for (std::size_t i = 0; i < concept_level.keys.size(); ++i) {
    groups[lexicon.domain_of(concept_level.keys[i].item)].push_back(concept_level.values[i]);
  }
  std::vector<BoxplotStats> boxes;
  for (const auto& [domain_id, values] : groups) boxes.push_back(boxplot_stats(domain_id, values));
  return boxes;
}

std::string boxplots_json(std::span<const BoxplotStats> boxes) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& b : boxes) {
    doc.push_back({{"label", b.label},
                   {"n", b.n},
                   {"median", b.median},
                   {"q1", b.q1},
                   {"q3", b.q3},
                   {"whisker_low", b.whisker_low},
                   {"whisker_high", b.whisker_high},
                   {"outliers", b.outliers}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace lexalign
