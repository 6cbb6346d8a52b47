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

#include "lexalign/embed_store.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "lexalign/error.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/text.hpp"

namespace lexalign {

namespace {

constexpr std::size_t kMaxMessages = 100;

void note(LoadDiagnostics& diag, std::string message) {
  if (diag.messages.size() < kMaxMessages) {
    diag.messages.push_back(std::move(message));
  } else if (diag.messages.size() == kMaxMessages) {
    diag.messages.emplace_back("further diagnostics suppressed");
  }
}

double clamp_unit(double value) { return std::clamp(value, -1.0, 1.0); }

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_size(std::string_view text, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

// Nearest-first ordering with a deterministic tie-break on the form.
struct Candidate {
  double similarity;
  const std::string* form;
};

bool nearer(const Candidate& a, const Candidate& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return *a.form < *b.form;
}

NeighborList rank(std::string_view query, std::size_t k,
                  std::vector<Candidate>& candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCandidateSet,
                fmt::format("no candidates for '{}'", query));
  }
  const std::size_t n = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + n, candidates.end(),
                    nearer);
  NeighborList list;
  list.query = std::string(query);
  list.k = k;
  list.shortfall = candidates.size() < k;
  list.neighbors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    list.neighbors.push_back(Neighbor{*candidates[i].form, candidates[i].similarity});
  }
  return list;
}

void put_u32(std::ostream& out, std::uint32_t value) {
  std::array<char, 4> bytes{};
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), 4);
}

bool get_u32(std::istream& in, std::uint32_t& value) {
  std::array<unsigned char, 4> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), 4);
  if (in.gcount() != 4) return false;
  value = 0;
  for (int i = 0; i < 4; ++i) value |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return true;
}

}  // namespace

double dot(std::span<const double> u, std::span<const double> v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += u[i] * v[i];
    s1 += u[i + 1] * v[i + 1];
    s2 += u[i + 2] * v[i + 2];
    s3 += u[i + 3] * v[i + 3];
  }
  for (; i < n; ++i) s0 += u[i] * v[i];
  return (s0 + s1) + (s2 + s3);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{} vs {}", u.size(), v.size()));
  }
  const double nu = std::sqrt(dot(u, u));
  const double nv = std::sqrt(dot(v, v));
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::kZeroNorm, "cosine of zero vector");
  return clamp_unit(dot(u, v) / (nu * nv));
}

// ---------------------------------------------------------------------------
// VectorSpace

VectorSpace::VectorSpace(std::string language, std::size_t dim)
    : language_(std::move(language)), dim_(dim) {}

bool VectorSpace::add(std::string form, std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("'{}' has {} values, space has dim {}", form,
                            values.size(), dim_));
  }
  if (!all_finite(values)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("'{}' has non-finite values", form));
  }
  const double norm = std::sqrt(dot(values, values));
  if (norm == 0.0) throw Error(ErrorCode::kZeroNorm, fmt::format("'{}' is a zero vector", form));
  if (index_.contains(form)) return false;
  const std::size_t row = forms_.size();
  index_.emplace(form, row);
  lower_index_.try_emplace(lowercase(form), row);
  forms_.push_back(std::move(form));
  data_.insert(data_.end(), values.begin(), values.end());
  norms_.push_back(norm);
  return true;
}

std::optional<std::size_t> VectorSpace::row(std::string_view form) const {
  auto it = index_.find(std::string(form));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> VectorSpace::find(std::string_view form,
                                             bool lowercase_fallback) const {
  if (auto exact = row(form)) return exact;
  if (!lowercase_fallback) return std::nullopt;
  auto it = lower_index_.find(lowercase(form));
  if (it == lower_index_.end()) return std::nullopt;
  return it->second;
}

double VectorSpace::similarity(std::size_t a, std::size_t b) const {
  return clamp_unit(dot(vector(a), vector(b)) / (norms_[a] * norms_[b]));
}

VectorSpace VectorSpace::restrict_to_lexicon(const ConceptLexicon& lexicon,
                                             bool lowercase_fallback,
                                             LoadDiagnostics* diagnostics) const {
  VectorSpace out(language_, dim_);
  std::size_t missing = 0;
  for (const auto& form : lexicon.forms(language_)) {
    auto r = find(form, lowercase_fallback);
    if (!r) {
      ++missing;
      if (diagnostics) note(*diagnostics, fmt::format("{}: '{}' has no vector", language_, form));
      continue;
    }
    out.add(form, vector(*r));
  }
  if (diagnostics && missing > 0) {
    note(*diagnostics, fmt::format("{}: {} lexicon forms without vectors", language_, missing));
  }
  return out;
}

bool VectorSpace::operator==(const VectorSpace& other) const {
  return language_ == other.language_ && dim_ == other.dim_ &&
         forms_ == other.forms_ && data_ == other.data_;
}

LoadedSpace load_vectors(const std::filesystem::path& path, std::string language,
                         const FormSet* keep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kBadHeader, "empty file " + path.string());
  auto header = split(trim(line), ' ');
  std::size_t declared = 0, dim = 0;
  if (header.size() != 2 || !parse_size(header[0], declared) ||
      !parse_size(header[1], dim) || dim == 0) {
    throw Error(ErrorCode::kBadHeader,
                fmt::format("{}: expected 'N D' header, got '{}'", path.string(), chomp(line)));
  }

  LoadedSpace result{VectorSpace(std::move(language), dim), {}};
  LoadDiagnostics& diag = result.diagnostics;
  std::vector<double> values(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    ++diag.rows_read;
    auto fields = split(view, ' ');
    if (fields.size() != dim + 1) {
      ++diag.skipped_dimension;
      note(diag, fmt::format("line {}: {} values, expected {}", line_no,
                             fields.size() - 1, dim));
      continue;
    }
    bool ok = true;
    for (std::size_t i = 0; i < dim && ok; ++i) {
      ok = parse_double(fields[i + 1], values[i]) && std::isfinite(values[i]);
    }
    if (!ok) {
      ++diag.skipped_malformed;
      note(diag, fmt::format("line {}: unparsable value", line_no));
      continue;
    }
    std::string form;
    try {
      form = nfc(fields[0]);
    } catch (const Error&) {
      ++diag.skipped_malformed;
      note(diag, fmt::format("line {}: invalid UTF-8 form", line_no));
      continue;
    }
    if (keep && !keep->contains(form) && !keep->contains(lowercase(form))) continue;
    if (dot(values, values) == 0.0) {
      ++diag.skipped_zero_norm;
      note(diag, fmt::format("line {}: zero vector for '{}' skipped", line_no, form));
      continue;
    }
    if (!result.space.add(form, values)) {
      ++diag.skipped_duplicate;
      note(diag, fmt::format("line {}: duplicate form '{}' skipped", line_no, form));
      continue;
    }
    ++diag.rows_kept;
  }
  if (diag.rows_read != declared) {
    note(diag, fmt::format("header declares {} rows, file has {}", declared, diag.rows_read));
  }
  return result;
}

void write_vectors(const std::filesystem::path& path, const VectorSpace& space) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << space.size() << ' ' << space.dim() << '\n';
  for (std::size_t r = 0; r < space.size(); ++r) {
    out << space.form(r);
    for (double v : space.vector(r)) out << ' ' << format_real(v);
    out << '\n';
  }
}

NeighborList knn(const VectorSpace& space, std::string_view query, std::size_t k,
                 const FormSet* restriction) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  auto q = space.row(query);
  if (!q) throw Error(ErrorCode::kUnknownQuery, fmt::format("'{}' not in space", query));
  std::vector<Candidate> candidates;
  candidates.reserve(space.size());
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (r == *q) continue;
    if (restriction && !restriction->contains(space.form(r))) continue;
    candidates.push_back(Candidate{space.similarity(*q, r), &space.form(r)});
  }
  return rank(query, k, candidates);
}

// ---------------------------------------------------------------------------
// Point clouds

PointCloud::PointCloud(std::string form, std::size_t dim)
    : form_(std::move(form)), dim_(dim) {}

void PointCloud::add(std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("cloud '{}' has dim {}, vector has {}", form_, dim_,
                            values.size()));
  }
  if (!all_finite(values)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("cloud '{}': non-finite value", form_));
  }
  const double norm = std::sqrt(dot(values, values));
  if (norm == 0.0) throw Error(ErrorCode::kZeroNorm, fmt::format("cloud '{}': zero vector", form_));
  data_.insert(data_.end(), values.begin(), values.end());
  norms_.push_back(norm);
}

std::string_view to_string(CloudAggregation aggregation) noexcept {
  switch (aggregation) {
    case CloudAggregation::kMin: return "min";
    case CloudAggregation::kMax: return "max";
    case CloudAggregation::kMean: return "mean";
  }
  return "min";
}

CloudAggregation parse_cloud_aggregation(std::string_view text) {
  if (text == "min") return CloudAggregation::kMin;
  if (text == "max") return CloudAggregation::kMax;
  if (text == "mean") return CloudAggregation::kMean;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown cloud aggregation '{}'", text));
}

double pointcloud_distance(const PointCloud& a, const PointCloud& b,
                           CloudAggregation aggregation) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("clouds of dim {} and {}", a.dim(), b.dim()));
  }
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kEmptyCloud,
                fmt::format("'{}'", a.empty() ? a.form() : b.form()));
  }
  double best = aggregation == CloudAggregation::kMin ? 2.0 : -2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto u = a.vector(i);
    const double nu = a.norm(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double c = clamp_unit(dot(u, b.vector(j)) / (nu * b.norm(j)));
      switch (aggregation) {
        case CloudAggregation::kMin: best = std::min(best, c); break;
        case CloudAggregation::kMax: best = std::max(best, c); break;
        case CloudAggregation::kMean: sum += c; break;
      }
    }
  }
  if (aggregation == CloudAggregation::kMean) {
    return sum / static_cast<double>(a.size() * b.size());
  }
  return best;
}

PointCloudStore::PointCloudStore(std::string language, std::size_t dim)
    : language_(std::move(language)), dim_(dim) {}

bool PointCloudStore::add(PointCloud cloud) {
  if (cloud.dim() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("cloud '{}' has dim {}, store has {}", cloud.form(),
                            cloud.dim(), dim_));
  }
  std::string form = cloud.form();
  return clouds_.emplace(std::move(form), std::move(cloud)).second;
}

const PointCloud* PointCloudStore::find(std::string_view form) const {
  auto it = clouds_.find(form);
  return it == clouds_.end() ? nullptr : &it->second;
}

const PointCloud* PointCloudStore::find(std::string_view form,
                                        bool lowercase_fallback) const {
  if (const PointCloud* exact = find(form)) return exact;
  if (!lowercase_fallback) return nullptr;
  const std::string lowered = lowercase(form);
  // Linear scan is fine: fallback lookups happen once per lexicon form.
  for (const auto& [key, cloud] : clouds_) {
    if (lowercase(key) == lowered) return &cloud;
  }
  return nullptr;
}

PointCloudStore PointCloudStore::restrict_to_lexicon(const ConceptLexicon& lexicon,
                                                     bool lowercase_fallback,
                                                     LoadDiagnostics* diagnostics) const {
  PointCloudStore out(language_, dim_);
  std::size_t missing = 0;
  for (const auto& form : lexicon.forms(language_)) {
    const PointCloud* cloud = find(form, lowercase_fallback);
    if (!cloud) {
      ++missing;
      if (diagnostics) note(*diagnostics, fmt::format("{}: '{}' has no cloud", language_, form));
      continue;
    }
    PointCloud copy(form, dim_);
    for (std::size_t i = 0; i < cloud->size(); ++i) copy.add(cloud->vector(i));
    out.add(std::move(copy));
  }
  if (diagnostics && missing > 0) {
    note(*diagnostics, fmt::format("{}: {} lexicon forms without clouds", language_, missing));
  }
  return out;
}

CloudFormat detect_cloud_format(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (in.gcount() == 4 && std::string_view(magic.data(), 4) == "PCLD") {
    return CloudFormat::kPcld;
  }
  return CloudFormat::kJsonl;
}

namespace {

// Adds one raw record to the store, applying the threshold and dropping
// zero-norm members.
void ingest_cloud(LoadedStore& loaded, std::string form,
                  const std::vector<std::vector<double>>& vectors,
                  std::size_t threshold) {
  LoadDiagnostics& diag = loaded.diagnostics;
  ++diag.rows_read;
  form = nfc(form);
  PointCloud cloud(form, loaded.store.dim());
  std::size_t count = vectors.size();
  if (count > threshold) {
    ++diag.truncated_clouds;
    note(diag, fmt::format("'{}': {} vectors truncated to {}", form, count, threshold));
    count = threshold;
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (vectors[i].size() != loaded.store.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("'{}' vector {} has dim {}, expected {}", form, i,
                              vectors[i].size(), loaded.store.dim()));
    }
    if (dot(vectors[i], vectors[i]) == 0.0 || !all_finite(vectors[i])) {
      ++diag.dropped_members;
      note(diag, fmt::format("'{}': member {} dropped (zero norm)", form, i));
      continue;
    }
    cloud.add(vectors[i]);
  }
  if (!loaded.store.add(std::move(cloud))) {
    ++diag.skipped_duplicate;
    note(diag, fmt::format("duplicate cloud '{}' skipped", form));
    return;
  }
  ++diag.rows_kept;
}

LoadedStore load_pcld(const std::filesystem::path& path, std::string language,
                      std::size_t threshold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (in.gcount() != 4 || std::string_view(magic.data(), 4) != "PCLD") {
    throw Error(ErrorCode::kBadMagic, path.string());
  }
  std::uint32_t version = 0, dim = 0;
  if (!get_u32(in, version) || !get_u32(in, dim)) {
    throw Error(ErrorCode::kBadHeader, "truncated PCLD header in " + path.string());
  }
  if (version != 1) {
    throw Error(ErrorCode::kBadHeader, fmt::format("unsupported PCLD version {}", version));
  }
  if (dim == 0) throw Error(ErrorCode::kBadHeader, "PCLD dim is zero");
  LoadedStore loaded{PointCloudStore(std::move(language), dim), {}};
  std::vector<char> raw;
  while (true) {
    std::uint32_t form_len = 0;
    if (!get_u32(in, form_len)) break;  // clean end of file
    std::string form(form_len, '\0');
    in.read(form.data(), form_len);
    std::uint32_t count = 0;
    if (static_cast<std::uint32_t>(in.gcount()) != form_len || !get_u32(in, count)) {
      throw Error(ErrorCode::kMalformedRow, "truncated PCLD record in " + path.string());
    }
    std::vector<std::vector<double>> vectors(count, std::vector<double>(dim));
    raw.resize(static_cast<std::size_t>(dim) * 4);
    for (std::uint32_t v = 0; v < count; ++v) {
      in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
      if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw Error(ErrorCode::kMalformedRow, "truncated PCLD vector data");
      }
      for (std::uint32_t d = 0; d < dim; ++d) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) {
          bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(raw[4 * d + b]))
                  << (8 * b);
        }
        vectors[v][d] = static_cast<double>(std::bit_cast<float>(bits));
      }
    }
    ingest_cloud(loaded, std::move(form), vectors, threshold);
  }
  return loaded;
}

LoadedStore load_jsonl(const std::filesystem::path& path, std::string language,
                       std::size_t threshold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::optional<LoadedStore> loaded;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::string form;
    std::vector<std::vector<double>> vectors;
    try {
      auto record = nlohmann::json::parse(line);
      form = record.at("form").get<std::string>();
      vectors = record.at("vectors").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRow, fmt::format("line {}: {}", line_no, e.what()));
    }
    if (!loaded) {
      if (vectors.empty() || vectors.front().empty()) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("line {}: cannot infer dim from first record", line_no));
      }
      loaded.emplace(LoadedStore{PointCloudStore(language, vectors.front().size()), {}});
    }
    ingest_cloud(*loaded, std::move(form), vectors, threshold);
  }
  if (!loaded) loaded.emplace(LoadedStore{PointCloudStore(std::move(language), 0), {}});
  return std::move(*loaded);
}

}  // namespace

LoadedStore load_clouds(const std::filesystem::path& path, std::string language,
                        CloudFormat format, std::size_t threshold) {
  if (threshold == 0) throw Error(ErrorCode::kInvalidArgument, "cloud threshold must be positive");
  return format == CloudFormat::kPcld ? load_pcld(path, std::move(language), threshold)
                                      : load_jsonl(path, std::move(language), threshold);
}

void write_clouds_pcld(const std::filesystem::path& path, const PointCloudStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write("PCLD", 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(store.dim()));
  for (const auto& [form, cloud] : store.clouds()) {
    put_u32(out, static_cast<std::uint32_t>(form.size()));
    out.write(form.data(), static_cast<std::streamsize>(form.size()));
    put_u32(out, static_cast<std::uint32_t>(cloud.size()));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (double v : cloud.vector(i)) {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      }
    }
  }
}

void write_clouds_jsonl(const std::filesystem::path& path, const PointCloudStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& [form, cloud] : store.clouds()) {
    nlohmann::json record;
    record["form"] = form;
    auto vectors = nlohmann::json::array();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      auto v = cloud.vector(i);
      vectors.push_back(std::vector<double>(v.begin(), v.end()));
    }
    record["vectors"] = std::move(vectors);
    out << record.dump() << '\n';
  }
}

NeighborList knn_cloud(const PointCloudStore& store, std::string_view query,
                       std::size_t k, const FormSet* restriction,
                       CloudAggregation aggregation) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const PointCloud* q = store.find(query);
  if (!q) throw Error(ErrorCode::kUnknownQuery, fmt::format("'{}' not in store", query));
  if (q->empty()) throw Error(ErrorCode::kEmptyCloud, fmt::format("'{}'", query));
  std::vector<Candidate> candidates;
  candidates.reserve(store.size());
  for (const auto& [form, cloud] : store.clouds()) {
    if (&cloud == q || cloud.empty()) continue;
    if (restriction && !restriction->contains(form)) continue;
    candidates.push_back(Candidate{pointcloud_distance(*q, cloud, aggregation), &form});
  }
  return rank(query, k, candidates);
}

VectorSpace collapse_singletons(const PointCloudStore& store) {
  VectorSpace space(store.language(), store.dim());
  for (const auto& [form, cloud] : store.clouds()) {
    if (cloud.size() != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("cloud '{}' has {} vectors", form, cloud.size()));
    }
    space.add(form, cloud.vector(0));
  }
  return space;
}

}  // namespace lexalign
