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

#include "fixtures.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lexalign::testing {

namespace fs = std::filesystem;

MicroInstance make_micro(Rng& rng, std::size_t dim) {
  MicroInstance m;
  m.dim = dim;
  m.concepts = 3 + rng.below(6);
  for (const std::string lang : {"en", "fr"}) {
    const std::size_t n_forms = 2 + rng.below(m.concepts - 1);
    for (std::size_t c = 0; c < m.concepts; ++c) {
      if (c > 0 && rng.below(6) == 0) continue;  // missing lexicalization
      const std::string form = fmt::format("{}{}", lang, rng.below(n_forms));
      const std::string cid = fmt::format("k{}", c);
      m.olex[lang][cid] = form;
      m.rows.push_back({cid, "d", lang, form});
    }
    m.spaces[lang];
    m.clouds[lang];
    for (const auto& [cid, form] : m.olex[lang]) {
      if (m.spaces[lang].contains(form) || rng.below(8) == 0) continue;  // unembedded
      m.spaces[lang][form] = gaussian_vector(dim, rng);
      oracle::Cloud cloud;
      for (std::size_t i = 0; i < 1 + rng.below(3); ++i) cloud.push_back(gaussian_vector(dim, rng));
      m.clouds[lang][form] = cloud;
    }
  }
  return m;
}

ConceptLexicon MicroInstance::lexicon() const { return ConceptLexicon::from_rows(rows); }

std::shared_ptr<StaticIndex> MicroInstance::static_index(const std::string& language) const {
  VectorSpace s(language, dim);
  for (const auto& [f, v] : spaces.at(language)) s.add(f, v);
  return std::make_shared<StaticIndex>(std::move(s));
}

std::shared_ptr<CloudIndex> MicroInstance::cloud_index(const std::string& language) const {
  PointCloudStore store(language, dim);
  for (const auto& [f, cl] : clouds.at(language)) {
    PointCloud pc(f, dim);
    for (const auto& v : cl) pc.add(v);
    store.add(std::move(pc));
  }
  return std::make_shared<CloudIndex>(std::move(store), CloudAggregation::kMin);
}

std::string concept_name(std::size_t i) { return fmt::format("c{:04}", i); }
std::string domain_name(std::size_t i) { return fmt::format("d{:02}", i); }

std::vector<LexiconRow> lexicon_rows(std::size_t concepts, std::size_t domains,
                                     const std::vector<std::string>& languages,
                                     bool shared_forms) {
  std::vector<LexiconRow> rows;
  for (const auto& lang : languages) {
    for (std::size_t i = 0; i < concepts; ++i) {
      const std::string form =
          shared_forms ? fmt::format("w{}", i) : fmt::format("{}_w{}", lang, i);
      rows.push_back({concept_name(i), domain_name(i % domains), lang, form, 0});
    }
  }
  return rows;
}

ConceptLexicon make_lexicon(std::size_t concepts, std::size_t domains,
                            const std::vector<std::string>& languages, bool shared_forms) {
  const auto rows = lexicon_rows(concepts, domains, languages, shared_forms);
  return ConceptLexicon::from_rows(rows);
}

std::vector<double> gaussian_vector(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      n2 += x * x;
    }
  } while (n2 == 0.0);
  return v;
}

VectorSpace random_space(const std::string& language, const std::vector<std::string>& forms,
                         std::size_t dim, Rng& rng) {
  VectorSpace space(language, dim);
  for (const auto& f : forms) space.add(f, gaussian_vector(dim, rng));
  return space;
}

VectorSpace relabel(const VectorSpace& space, const std::string& language) {
  VectorSpace out(language, space.dim());
  for (std::size_t r = 0; r < space.size(); ++r) out.add(space.form(r), space.vector(r));
  return out;
}

std::vector<double> random_orthogonal(std::size_t dim, Rng& rng) {
  // Gram-Schmidt on Gaussian rows.
  std::vector<double> q(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (;;) {
      auto v = gaussian_vector(dim, rng);
      for (std::size_t j = 0; j < i; ++j) {
        double d = 0.0;
        for (std::size_t t = 0; t < dim; ++t) d += v[t] * q[j * dim + t];
        for (std::size_t t = 0; t < dim; ++t) v[t] -= d * q[j * dim + t];
      }
      double n = 0.0;
      for (double x : v) n += x * x;
      n = std::sqrt(n);
      if (n < 1e-6) continue;
      for (std::size_t t = 0; t < dim; ++t) q[i * dim + t] = v[t] / n;
      break;
    }
  }
  return q;
}

VectorSpace transform(const VectorSpace& space, const std::vector<double>& q, double scale) {
  const std::size_t dim = space.dim();
  VectorSpace out(space.language(), dim);
  std::vector<double> y(dim);
  for (std::size_t r = 0; r < space.size(); ++r) {
    const auto x = space.vector(r);
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (std::size_t t = 0; t < dim; ++t) s += q[i * dim + t] * x[t];
      y[i] = scale * s;
    }
    out.add(space.form(r), y);
  }
  return out;
}

PointCloudStore random_clouds(const std::string& language, const std::vector<std::string>& forms,
                              std::size_t dim, std::size_t size, Rng& rng) {
  PointCloudStore store(language, dim);
  for (const auto& f : forms) {
    PointCloud cloud(f, dim);
    for (std::size_t i = 0; i < size; ++i) cloud.add(gaussian_vector(dim, rng));
    store.add(std::move(cloud));
  }
  return store;
}

PointCloudStore singleton_clouds(const VectorSpace& space) {
  PointCloudStore store(space.language(), space.dim());
  for (std::size_t r = 0; r < space.size(); ++r) {
    PointCloud cloud(space.form(r), space.dim());
    cloud.add(space.vector(r));
    store.add(std::move(cloud));
  }
  return store;
}

VectorSpace clustered_space(const std::string& language, std::size_t concepts,
                            std::size_t domains, std::size_t dim, Rng& rng) {
  std::vector<std::vector<double>> centers;
  for (std::size_t d = 0; d < domains; ++d) {
    auto c = gaussian_vector(dim, rng);
    double n = 0.0;
    for (double x : c) n += x * x;
    for (auto& x : c) x *= 50.0 / std::sqrt(n);
    centers.push_back(std::move(c));
  }
  VectorSpace space(language, dim);
  for (std::size_t i = 0; i < concepts; ++i) {
    auto v = centers[i % domains];
    for (auto& x : v) x += rng.normal();
    space.add(fmt::format("w{}", i), v);
  }
  return space;
}

IndexMap static_indexes(const std::vector<VectorSpace>& spaces) {
  IndexMap map;
  for (const auto& s : spaces) map[s.language()] = std::make_shared<StaticIndex>(s);
  return map;
}

TempDir::TempDir() {
  static std::uint64_t counter = 0;
  const auto base = fs::temp_directory_path();
  Rng rng(derive_seed(static_cast<std::uint64_t>(::time(nullptr)), {++counter}));
  for (;;) {
    path_ = base / fmt::format("lexalign-test-{:016x}", rng.next());
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lexicon_tsv(const fs::path& path, const std::vector<LexiconRow>& rows) {
  std::string text = "concept_id\tdomain_id\tlanguage\tform\n";
  for (const auto& r : rows) {
    text += fmt::format("{}\t{}\t{}\t{}\n", r.concept_id, r.domain_id, r.language, r.form);
  }
  write_text(path, text);
}

namespace {

std::string toml_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + items[i] + "\"";
  }
  return out + "]";
}

}  // namespace

PipelineFixture write_pipeline_fixture(const fs::path& dir,
                                       const std::vector<std::string>& languages,
                                       std::size_t concepts, std::size_t domains,
                                       std::uint64_t seed, const std::string& extra_config) {
  constexpr std::size_t kDim = 8;
  constexpr std::size_t kSubdomains = 6;
  constexpr std::size_t kPerSubdomain = 4;
  Rng rng(seed);
  fs::create_directories(dir);

  const auto rows = lexicon_rows(concepts, domains, languages);
  write_lexicon_tsv(dir / "lexicon.tsv", rows);
  std::string dom = "domain_id\tname\n";
  for (std::size_t d = 0; d < domains; ++d) {
    dom += fmt::format("{}\tdomain {}\n", domain_name(d), d);
  }
  write_text(dir / "domains.tsv", dom);

  // Shared concept geometry with per-language noise keeps scores spread out.
  std::vector<std::vector<double>> base;
  for (std::size_t i = 0; i < concepts; ++i) base.push_back(gaussian_vector(kDim, rng));
  auto noisy = [&](std::size_t i, double sigma) {
    auto v = base[i];
    for (auto& x : v) x += sigma * rng.normal();
    return v;
  };

  std::string config = "[inputs]\nlexicon = \"lexicon.tsv\"\ndomains = \"domains.tsv\"\n";
  std::string emb = "[embeddings]\n", ave = "[embeddings_ave]\n", clouds = "[clouds]\n";
  for (std::size_t li = 0; li < languages.size(); ++li) {
    const auto& lang = languages[li];
    VectorSpace stat(lang, kDim), avg(lang, kDim);
    PointCloudStore store(lang, kDim);
    for (std::size_t i = 0; i < concepts; ++i) {
      const std::string form = fmt::format("{}_w{}", lang, i);
      stat.add(form, noisy(i, 0.6));
      avg.add(form, noisy(i, 0.8));
      PointCloud cloud(form, kDim);
      for (std::size_t m = 0; m < 3; ++m) cloud.add(noisy(i, 0.7));
      store.add(std::move(cloud));
    }
    write_vectors(dir / fmt::format("{}.vec", lang), stat);
    write_vectors(dir / fmt::format("{}.ave.vec", lang), avg);
    const bool binary = li % 2 == 0;
    const auto cloud_file = fmt::format("{}.clouds.{}", lang, binary ? "pcld" : "jsonl");
    if (binary) {
      write_clouds_pcld(dir / cloud_file, store);
    } else {
      write_clouds_jsonl(dir / cloud_file, store);
    }
    emb += fmt::format("{} = \"{}.vec\"\n", lang, lang);
    ave += fmt::format("{} = \"{}.ave.vec\"\n", lang, lang);
    clouds += fmt::format("{} = \"{}\"\n", lang, cloud_file);
  }

  // Kinship-shaped gap inventory: six subdomains of four concepts each.
  std::string gaps = "language\tsubdomain\tconcept_id\tis_gap\n";
  for (std::size_t li = 0; li < languages.size(); ++li) {
    for (std::size_t s = 0; s < kSubdomains; ++s) {
      for (std::size_t j = 0; j < kPerSubdomain; ++j) {
        const bool gap = (j * 7 + li * li * 3 + s * (li + 2)) % 5 < 2;
        gaps += fmt::format("{}\ts{}\tk{}_{}\t{}\n", languages[li], s, s, j, gap ? 1 : 0);
      }
    }
  }
  write_text(dir / "gaps.tsv", gaps);
  std::string cmap = "lexicon_concept_id\tsubdomain\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(concepts, 2 * kSubdomains); ++i) {
    cmap += fmt::format("{}\ts{}\n", concept_name(i), i % kSubdomains);
  }
  write_text(dir / "concept_map.tsv", cmap);

  std::string feats = "concept_id,frequency_log,concreteness,rate_of_change\n";
  for (std::size_t i = 0; i < concepts; ++i) {
    feats += fmt::format("{},{:.6f},{:.6f},{}\n", concept_name(i), 3.0 + rng.normal(),
                         2.5 + rng.uniform() * 2.0,
                         i % 5 == 0 ? std::string() : fmt::format("{:.6f}", rng.uniform()));
  }
  write_text(dir / "concepts.csv", feats);
  const std::vector<std::pair<double, double>> places{
      {48.8566, 2.3522}, {52.52, 13.405}, {40.4168, -3.7038}, {59.3293, 18.0686},
      {38.7223, -9.1393}, {60.1699, 24.9384}};
  std::string coords = "language,lat,lon\n";
  std::string traits = "language,trait_1,trait_2,trait_3,trait_4,trait_5,trait_6\n";
  for (std::size_t li = 0; li < languages.size(); ++li) {
    const auto& [lat, lon] = places[li % places.size()];
    coords += fmt::format("{},{},{}\n", languages[li], lat, lon);
    traits += languages[li];
    for (std::size_t t = 0; t < 6; ++t) {
      traits += (t + li) % 4 == 3 ? std::string(",") : fmt::format(",v{}", (t * li) % 3);
    }
    traits += "\n";
  }
  write_text(dir / "coordinates.csv", coords);
  write_text(dir / "traits.csv", traits);
  std::string norms = "concept_id,score\n";
  for (std::size_t i = 0; i < concepts; ++i) {
    norms += fmt::format("{},{:.6f}\n", concept_name(i), rng.uniform());
  }
  write_text(dir / "translation_norms.csv", norms);

  config += "\n" + emb + "\n" + ave + "\n" + clouds;
  config += "\n[gaps]\ninventory = \"gaps.tsv\"\nconcept_map = \"concept_map.tsv\"\n";
  config +=
      "\n[features]\nconcepts = \"concepts.csv\"\ncoordinates = \"coordinates.csv\"\n"
      "traits = \"traits.csv\"\nnorms = \"translation_norms.csv\"\n";
  config += fmt::format(
      "\n[run]\nk = 10\nmetrics = [\"SNC-static\", \"SNC-ave\", \"SNC-cloud\", \"NO\"]\n"
      "languages = {}\nseed = {}\nmin_survivors = 3\noutput = \"out\"\n",
      toml_list(languages), seed);
  config +=
      "\n[validate]\npermutations = 5\nremoved_domains = [1]\ntrials = 4\n"
      "\n[polysemy]\nmax_components = 3\nrepeats = 2\n";
  config += extra_config;
  write_text(dir / "lexalign.toml", config);

  PipelineFixture fx;
  fx.config = dir / "lexalign.toml";
  fx.languages = languages;
  fx.concepts = concepts;
  fx.domains = domains;
  return fx;
}

}  // namespace lexalign::testing
