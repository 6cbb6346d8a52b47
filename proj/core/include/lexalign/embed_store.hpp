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

#ifndef LEXALIGN_EMBED_STORE_HPP_
#define LEXALIGN_EMBED_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexalign {

class ConceptLexicon;

/// Default cap on the number of occurrence vectors kept per word.
inline constexpr std::size_t kCloudThreshold = 1000;

using FormSet = std::set<std::string, std::less<>>;

/// Inner product with a fixed four-lane accumulation order. Every cosine in
/// the library goes through this kernel, so results agree bitwise across
/// call sites and argument order.
double dot(std::span<const double> u, std::span<const double> v) noexcept;

/// dot(u,v) / (|u||v|), clamped to [-1, 1]. Throws kDimensionMismatch,
/// kZeroNorm.
double cosine(std::span<const double> u, std::span<const double> v);

/// Skips and warnings collected while reading embedding files. Loading never
/// fails on individual bad rows.
struct LoadDiagnostics {
  std::size_t rows_read = 0;
  std::size_t rows_kept = 0;
  std::size_t skipped_dimension = 0;
  std::size_t skipped_zero_norm = 0;
  std::size_t skipped_malformed = 0;
  std::size_t skipped_duplicate = 0;
  std::size_t truncated_clouds = 0;
  std::size_t dropped_members = 0;
  std::vector<std::string> messages;

  bool clean() const noexcept { return messages.empty(); }
};

/// One language's word vectors: a dense row-major matrix with per-row norms.
class VectorSpace {
 public:
  VectorSpace() = default;
  VectorSpace(std::string language, std::size_t dim);

  /// Appends a row. Throws kDimensionMismatch, kZeroNorm; returns false and
  /// leaves the space unchanged when `form` is already present.
  bool add(std::string form, std::span<const double> values);

  const std::string& language() const noexcept { return language_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return forms_.size(); }
  const std::vector<std::string>& forms() const noexcept { return forms_; }

  std::optional<std::size_t> row(std::string_view form) const;
  /// Exact match first, then (optionally) a lowercase match against the
  /// lowercased row forms.
  std::optional<std::size_t> find(std::string_view form,
                                  bool lowercase_fallback) const;
  bool contains(std::string_view form) const { return row(form).has_value(); }

  std::span<const double> vector(std::size_t row) const {
    return {data_.data() + row * dim_, dim_};
  }
  double norm(std::size_t row) const { return norms_[row]; }
  const std::string& form(std::size_t row) const { return forms_[row]; }

  /// Cosine between two rows, computed exactly as `cosine` would.
  double similarity(std::size_t a, std::size_t b) const;

  /// A copy keyed by the language's lexicon forms: each lexicon form is
  /// matched against this space's rows and carried over under the lexicon
  /// spelling. Unmatched forms are reported in `diagnostics`.
  VectorSpace restrict_to_lexicon(const ConceptLexicon& lexicon,
                                  bool lowercase_fallback,
                                  LoadDiagnostics* diagnostics = nullptr) const;

  bool operator==(const VectorSpace& other) const;

 private:
  std::string language_;
  std::size_t dim_ = 0;
  std::vector<std::string> forms_;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> lower_index_;
};

struct LoadedSpace {
  VectorSpace space;
  LoadDiagnostics diagnostics;
};

/// Reads fastText-style text vectors (`N D` header, then `form v1 .. vD`).
/// When `keep` is given only those forms (after NFC) are retained, which
/// keeps multi-million-row files affordable. Throws kBadHeader, kIo.
LoadedSpace load_vectors(const std::filesystem::path& path, std::string language,
                         const FormSet* keep = nullptr);

void write_vectors(const std::filesystem::path& path, const VectorSpace& space);

struct Neighbor {
  std::string form;
  double similarity = 0.0;

  bool operator==(const Neighbor&) const = default;
};

/// Ranked neighbors of a query: similarity non-increasing, ties by form.
struct NeighborList {
  std::string query;
  std::vector<Neighbor> neighbors;
  std::size_t k = 0;
  bool shortfall = false;  // fewer than k candidates existed

  bool operator==(const NeighborList&) const = default;
};

/// Exact top-k by cosine over (restriction ∩ space) \ {query}. A null
/// restriction means the whole space. Throws kUnknownQuery,
/// kEmptyCandidateSet, kInvalidArgument (k == 0).
NeighborList knn(const VectorSpace& space, std::string_view query, std::size_t k,
                 const FormSet* restriction = nullptr);
inline NeighborList knn(const VectorSpace& space, std::string_view query,
                        std::size_t k, const FormSet& restriction) {
  return knn(space, query, k, &restriction);
}

/// Occurrence vectors of one word.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::string form, std::size_t dim);

  /// Throws kDimensionMismatch, kZeroNorm.
  void add(std::span<const double> values);

  const std::string& form() const noexcept { return form_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return norms_.size(); }
  bool empty() const noexcept { return norms_.empty(); }
  std::span<const double> vector(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double norm(std::size_t i) const { return norms_[i]; }

  bool operator==(const PointCloud&) const = default;

 private:
  std::string form_;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::vector<double> norms_;
};

enum class CloudAggregation { kMin, kMax, kMean };

std::string_view to_string(CloudAggregation aggregation) noexcept;
/// Parses "min", "max", "mean"; throws kInvalidArgument.
CloudAggregation parse_cloud_aggregation(std::string_view text);

/// Aggregate of all |a|x|b| pairwise cosines; `kMin` is the default
/// point-cloud distance. Throws kDimensionMismatch, kEmptyCloud.
double pointcloud_distance(const PointCloud& a, const PointCloud& b,
                           CloudAggregation aggregation = CloudAggregation::kMin);

class PointCloudStore {
 public:
  PointCloudStore() = default;
  PointCloudStore(std::string language, std::size_t dim);

  /// Throws kDimensionMismatch; returns false if the form already exists.
  bool add(PointCloud cloud);

  const std::string& language() const noexcept { return language_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return clouds_.size(); }
  const std::map<std::string, PointCloud, std::less<>>& clouds() const noexcept {
    return clouds_;
  }
  const PointCloud* find(std::string_view form) const;
  const PointCloud* find(std::string_view form, bool lowercase_fallback) const;

  /// Counterpart of VectorSpace::restrict_to_lexicon.
  PointCloudStore restrict_to_lexicon(const ConceptLexicon& lexicon,
                                      bool lowercase_fallback,
                                      LoadDiagnostics* diagnostics = nullptr) const;

  bool operator==(const PointCloudStore&) const = default;

 private:
  std::string language_;
  std::size_t dim_ = 0;
  std::map<std::string, PointCloud, std::less<>> clouds_;
};

enum class CloudFormat { kPcld, kJsonl };

struct LoadedStore {
  PointCloudStore store;
  LoadDiagnostics diagnostics;
};

/// Reads PCLD binary or JSONL clouds. Clouds above `threshold` keep their
/// first `threshold` vectors; zero-norm members are dropped. A cloud left
/// empty stays in the store so that querying it reports kEmptyCloud.
/// Throws kBadMagic, kDimensionMismatch, kIo, kMalformedRow.
LoadedStore load_clouds(const std::filesystem::path& path, std::string language,
                        CloudFormat format,
                        std::size_t threshold = kCloudThreshold);

/// Picks the format from the file's first bytes.
CloudFormat detect_cloud_format(const std::filesystem::path& path);

void write_clouds_pcld(const std::filesystem::path& path,
                       const PointCloudStore& store);
void write_clouds_jsonl(const std::filesystem::path& path,
                        const PointCloudStore& store);

/// knn under pointcloud_distance; a higher aggregated cosine is nearer.
/// Candidates with empty clouds are skipped. Throws as knn, plus
/// kEmptyCloud for an empty query cloud.
NeighborList knn_cloud(const PointCloudStore& store, std::string_view query,
                       std::size_t k, const FormSet* restriction = nullptr,
                       CloudAggregation aggregation = CloudAggregation::kMin);

/// Collapses singleton clouds into a VectorSpace (one row per cloud, first
/// vector). Throws kInvalidArgument if any cloud has more than one vector.
VectorSpace collapse_singletons(const PointCloudStore& store);

}  // namespace lexalign

#endif  // LEXALIGN_EMBED_STORE_HPP_
