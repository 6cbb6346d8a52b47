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

#ifndef LEXALIGN_TESTS_FIXTURES_HPP_
#define LEXALIGN_TESTS_FIXTURES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lexalign/embed_store.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/metrics.hpp"
#include "oracles.hpp"
#include "lexalign/random.hpp"

namespace lexalign::testing {

/// "c0007"-style ids so lexicographic order equals numeric order.
std::string concept_name(std::size_t i);
std::string domain_name(std::size_t i);

/// Rows lexicalizing concepts 0..n-1 in every language as `<prefix><i>`,
/// where prefix is "<lang>_" or, with `shared_forms`, "w". Concept i lives
/// in domain i % domains.
std::vector<LexiconRow> lexicon_rows(std::size_t concepts, std::size_t domains,
                                     const std::vector<std::string>& languages,
                                     bool shared_forms = false);
ConceptLexicon make_lexicon(std::size_t concepts, std::size_t domains,
                            const std::vector<std::string>& languages,
                            bool shared_forms = false);

std::vector<double> gaussian_vector(std::size_t dim, Rng& rng);
VectorSpace random_space(const std::string& language, const std::vector<std::string>& forms,
                         std::size_t dim, Rng& rng);
/// Same vectors under another language code.
VectorSpace relabel(const VectorSpace& space, const std::string& language);
/// Row-major dim x dim orthogonal matrix.
std::vector<double> random_orthogonal(std::size_t dim, Rng& rng);
/// Applies x -> scale * Q x to every vector.
VectorSpace transform(const VectorSpace& space, const std::vector<double>& q, double scale);

/// One cloud per form with `size` Gaussian members.
PointCloudStore random_clouds(const std::string& language, const std::vector<std::string>& forms,
                              std::size_t dim, std::size_t size, Rng& rng);
/// Singleton clouds holding the rows of `space`.
PointCloudStore singleton_clouds(const VectorSpace& space);

/// Vectors for `make_lexicon(..., shared_forms = true)` where each domain is
/// a tight cluster far from every other, so neighbor lists of small k never
/// leave the query's domain.
VectorSpace clustered_space(const std::string& language, std::size_t concepts,
                            std::size_t domains, std::size_t dim, Rng& rng);

IndexMap static_indexes(const std::vector<VectorSpace>& spaces);

/// Random two-language instance ("en", "fr") with colexified forms, missing
/// lexicalizations and unembedded forms. Concepts are "k0".."k<n-1>".
struct MicroInstance {
  oracle::Lexicon olex;
  std::vector<LexiconRow> rows;
  std::map<std::string, oracle::Space> spaces;
  std::map<std::string, oracle::Clouds> clouds;
  std::size_t concepts = 0;
  std::size_t dim = 0;

  ConceptLexicon lexicon() const;
  std::shared_ptr<StaticIndex> static_index(const std::string& language) const;
  std::shared_ptr<CloudIndex> cloud_index(const std::string& language) const;
};
MicroInstance make_micro(Rng& rng, std::size_t dim);

/// Self-cleaning temporary directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);
void write_lexicon_tsv(const std::filesystem::path& path, const std::vector<LexiconRow>& rows);

/// A small on-disk pipeline with every input file the config refers to.
struct PipelineFixture {
  std::filesystem::path config;
  std::vector<std::string> languages;
  std::size_t concepts = 0;
  std::size_t domains = 0;
};
PipelineFixture write_pipeline_fixture(const std::filesystem::path& dir,
                                       const std::vector<std::string>& languages,
                                       std::size_t concepts, std::size_t domains,
                                       std::uint64_t seed, const std::string& extra_config = "");

}  // namespace lexalign::testing

#endif  // LEXALIGN_TESTS_FIXTURES_HPP_
