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

#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include <memory>
#include <string>
#include <vector>

#include "lexalign/embed_store.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/metrics.hpp"
#include "lexalign/random.hpp"
#include "lexalign/stats.hpp"

namespace lexalign {
namespace {

std::vector<double> gaussian(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  for (auto& x : v) x = rng.normal();
  return v;
}

VectorSpace make_space(const std::string& language, std::size_t words, std::size_t dim,
                       Rng& rng) {
  VectorSpace space(language, dim);
  for (std::size_t i = 0; i < words; ++i) space.add(fmt::format("w{}", i), gaussian(dim, rng));
  return space;
}

ConceptLexicon make_lexicon(std::size_t words, const std::vector<std::string>& languages) {
  std::vector<LexiconRow> rows;
  for (const auto& lang : languages) {
    for (std::size_t i = 0; i < words; ++i) {
      rows.push_back({fmt::format("c{:05}", i), fmt::format("d{:02}", i % 20), lang,
                      fmt::format("w{}", i), 0});
    }
  }
  return ConceptLexicon::from_rows(rows);
}

void BM_Knn(benchmark::State& state) {
  Rng rng(1);
  const auto words = static_cast<std::size_t>(state.range(0));
  const auto space = make_space("en", words, 300, rng);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn(space, fmt::format("w{}", q), 100));
    q = (q + 1) % words;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words));
}
BENCHMARK(BM_Knn)->Arg(1000)->Arg(10000);

void BM_PointCloudDistance(benchmark::State& state) {
  Rng rng(2);
  const auto members = static_cast<std::size_t>(state.range(0));
  PointCloud a("a", 768), b("b", 768);
  for (std::size_t i = 0; i < members; ++i) {
    a.add(gaussian(768, rng));
    b.add(gaussian(768, rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(pointcloud_distance(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(members * members));
}
BENCHMARK(BM_PointCloudDistance)->Arg(10)->Arg(50);

void BM_ComputeTable(benchmark::State& state) {
  Rng rng(3);
  constexpr std::size_t kWords = 1000;
  const std::vector<std::string> languages{"de", "en", "fr"};
  const auto lexicon = make_lexicon(kWords, languages);
  IndexMap indexes;
  for (const auto& lang : languages) {
    indexes[lang] = std::make_shared<StaticIndex>(make_space(lang, kWords, 100, rng));
  }
  TableRequest request;
  request.languages = languages;
  request.config = {50, 3, CorrelationMethod::kPearson};
  request.jobs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(request, lexicon, indexes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(3 * kWords));
}
BENCHMARK(BM_ComputeTable)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Pearson(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = gaussian(n, rng), y = gaussian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pearson(x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Pearson)->Arg(100)->Arg(10000);

}  // namespace
}  // namespace lexalign

BENCHMARK_MAIN();
