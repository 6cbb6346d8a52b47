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

#include <gtest/gtest.h>

#include <fmt/format.h>

#include <cmath>
#include <memory>

#include "fixtures.hpp"
#include "lexalign/error.hpp"
#include "lexalign/metrics.hpp"
#include "oracles.hpp"

namespace lexalign {
namespace {

using Vec = std::vector<double>;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

std::vector<std::string> shared_forms(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fmt::format("w{}", i));
  return out;
}

Vec at_angle(double radians) { return {std::cos(radians), std::sin(radians)}; }

// Lexicon where concept X is lexicalized as "x" in both en and fr.
ConceptLexicon identity_lexicon(const std::vector<std::string>& concepts) {
  std::vector<LexiconRow> rows;
  for (const auto& c : concepts) {
    rows.push_back({c, "d", "en", c});
    rows.push_back({c, "d", "fr", c});
  }
  return ConceptLexicon::from_rows(rows);
}

TEST(LanguagePair, CanonicalOrder) {
  const auto p = LanguagePair::of("fr", "en");
  EXPECT_EQ(p.a, "en");
  EXPECT_EQ(p.b, "fr");
  EXPECT_EQ(p.label(), "en-fr");
  EXPECT_EQ(p, LanguagePair::of("en", "fr"));
}

TEST(Metric, NamesRoundTrip) {
  for (auto m : {Metric::kNeighborsOverlap, Metric::kSncStatic, Metric::kSncAve,
                 Metric::kSncCloud}) {
    EXPECT_EQ(parse_metric(to_string(m)), m);
  }
  EXPECT_EQ(to_string(Metric::kNeighborsOverlap), "NO");
  EXPECT_EQ(code_of([] { parse_metric("SNC"); }), ErrorCode::kInvalidArgument);
}

TEST(Snc, IdentityConfigurationIsOne) {
  Rng rng(1);
  const auto forms = shared_forms(40);
  const auto lex = testing::make_lexicon(40, 4, {"en", "fr"}, true);
  const auto en = testing::random_space("en", forms, 5, rng);
  const StaticIndex a(en), b(testing::relabel(en, "fr"));
  const MetricConfig cfg{10, 10, CorrelationMethod::kPearson};
  for (std::size_t c = 0; c < 40; ++c) {
    const auto id = testing::concept_name(c);
    const auto fwd = snc_unidirectional(id, {&a}, {&b}, lex, cfg);
    EXPECT_NEAR(fwd.value, 1.0, 1e-12);
    EXPECT_EQ(fwd.direction, Direction::kForward);
    EXPECT_EQ(fwd.survivors_forward, 10u);
    const auto bi = snc_bidirectional(id, {&a}, {&b}, lex, cfg);
    EXPECT_NEAR(bi.value, 1.0, 1e-12);
    EXPECT_EQ(bi.direction, Direction::kBidirectional);
    EXPECT_EQ(neighbors_overlap(id, {&a}, {&b}, lex, 10).value, 1.0);
  }
}

TEST(Snc, TooFewSurvivorsWhenFewNeighborsTranslate) {
  // en lexicalizes 11 concepts; fr only the query concept and 4 others.
  std::vector<LexiconRow> rows;
  for (int i = 0; i < 11; ++i) rows.push_back({fmt::format("c{:02}", i), "d", "en", fmt::format("e{}", i)});
  for (int i = 0; i < 5; ++i) rows.push_back({fmt::format("c{:02}", i), "d", "fr", fmt::format("f{}", i)});
  const auto lex = ConceptLexicon::from_rows(rows);
  Rng rng(2);
  VectorSpace en("en", 3), fr("fr", 3);
  for (int i = 0; i < 11; ++i) en.add(fmt::format("e{}", i), testing::gaussian_vector(3, rng));
  for (int i = 0; i < 5; ++i) fr.add(fmt::format("f{}", i), testing::gaussian_vector(3, rng));
  const StaticIndex a(en), b(fr);
  const MetricConfig cfg{10, 10, CorrelationMethod::kPearson};
  EXPECT_EQ(code_of([&] { snc_unidirectional("c00", {&a}, {&b}, lex, cfg); }),
            ErrorCode::kTooFewSurvivors);
  const auto profile = snc_profile("c00", {&a}, {&b}, lex, 10);
  EXPECT_EQ(profile.entries.size(), 10u);
  EXPECT_EQ(profile.survivors(), 4u);
  std::size_t dropped = 0;
  for (const auto& e : profile.entries) {
    dropped += e.status == NeighborStatus::kNoTranslation ? 1 : 0;
    EXPECT_EQ(e.translation.has_value(), e.status != NeighborStatus::kNoTranslation);
  }
  EXPECT_EQ(dropped, 6u);
  // The floor of three still applies when min_survivors is lower.
  EXPECT_NO_THROW(snc_unidirectional("c00", {&a}, {&b}, lex, {10, 1, CorrelationMethod::kPearson}));
}

TEST(Snc, NotEmbeddedNeighborsAreDropped) {
  const auto lex = identity_lexicon({"a", "b", "c", "d", "e"});
  VectorSpace en("en", 2), fr("fr", 2);
  for (auto [f, ang] : std::vector<std::pair<std::string, double>>{
           {"a", 0.0}, {"b", 0.1}, {"c", 0.5}, {"d", 1.2}, {"e", 2.0}}) {
    en.add(f, at_angle(ang));
    if (f != "c") fr.add(f, at_angle(ang * 1.1));
  }
  const StaticIndex a(en), b(fr);
  const auto profile = snc_profile("a", {&a}, {&b}, lex, 4);
  ASSERT_EQ(profile.entries.size(), 4u);
  EXPECT_EQ(profile.entries[1].neighbor, "c");
  EXPECT_EQ(profile.entries[1].status, NeighborStatus::kNotEmbedded);
  EXPECT_EQ(profile.survivors(), 3u);
}

TEST(Snc, ConceptErrors) {
  std::vector<LexiconRow> rows{{"a", "d", "en", "a"}, {"a", "d", "fr", "a"}, {"b", "d", "en", "b"},
                               {"c", "d", "en", "c"}, {"c", "d", "fr", "c"}};
  const auto lex = ConceptLexicon::from_rows(rows);
  VectorSpace en("en", 2), fr("fr", 2);
  en.add("a", Vec{1, 0});
  en.add("b", Vec{0, 1});
  en.add("c", Vec{1, 1});
  fr.add("a", Vec{1, 0});
  const StaticIndex a(en), b(fr);
  const MetricConfig cfg{2, 3, CorrelationMethod::kPearson};
  EXPECT_EQ(code_of([&] { snc_unidirectional("zz", {&a}, {&b}, lex, cfg); }),
            ErrorCode::kUnknownConcept);
  EXPECT_EQ(code_of([&] { snc_unidirectional("b", {&a}, {&b}, lex, cfg); }),
            ErrorCode::kConceptNotLexicalized);
  EXPECT_EQ(code_of([&] { snc_unidirectional("c", {&a}, {&b}, lex, cfg); }),
            ErrorCode::kConceptNotEmbedded);
  EXPECT_EQ(code_of([&] { neighbors_overlap("c", {&a}, {&b}, lex, 2); }),
            ErrorCode::kConceptNotEmbedded);
}

TEST(Snc, BidirectionalIsMeanAndSymmetric) {
  Rng rng(3);
  const auto forms = shared_forms(30);
  const auto lex = testing::make_lexicon(30, 3, {"en", "fr"}, true);
  const StaticIndex a(testing::random_space("en", forms, 4, rng));
  const StaticIndex b(testing::random_space("fr", forms, 4, rng));
  const MetricConfig cfg{8, 3, CorrelationMethod::kPearson};
  for (std::size_t c = 0; c < 30; ++c) {
    const auto id = testing::concept_name(c);
    const double fwd = snc_unidirectional(id, {&a}, {&b}, lex, cfg).value;
    const double bwd = snc_unidirectional(id, {&b}, {&a}, lex, cfg).value;
    const auto ab = snc_bidirectional(id, {&a}, {&b}, lex, cfg);
    const auto ba = snc_bidirectional(id, {&b}, {&a}, lex, cfg);
    EXPECT_EQ(ab.value, (fwd + bwd) / 2.0);
    EXPECT_EQ(ab.value, ba.value);
    EXPECT_EQ(ab.survivors_forward, ba.survivors_forward);
    EXPECT_EQ(ab.survivors_backward, ba.survivors_backward);
    EXPECT_EQ(neighbors_overlap(id, {&a}, {&b}, lex, 8).value,
              neighbors_overlap(id, {&b}, {&a}, lex, 8).value);
  }
}

TEST(Snc, SpearmanAndKendallOptions) {
  Rng rng(4);
  const auto forms = shared_forms(25);
  const auto lex = testing::make_lexicon(25, 3, {"en", "fr"}, true);
  const StaticIndex a(testing::random_space("en", forms, 3, rng));
  const StaticIndex b(testing::random_space("fr", forms, 3, rng));
  for (auto method : {CorrelationMethod::kSpearman, CorrelationMethod::kKendall}) {
    const MetricConfig cfg{6, 3, method};
    const auto profile = snc_profile("c0003", {&a}, {&b}, lex, 6);
    EXPECT_EQ(score_profile(profile, cfg),
              correlation(method, profile.source_similarities, profile.target_similarities));
  }
}

// NO fixtures: en neighbors of q are {A,B,C,D}; fr neighbors are {A,B,E,F}.
ConceptLexicon overlap_lexicon() {
  return identity_lexicon({"q", "A", "B", "C", "D", "E", "F"});
}

TEST(NeighborsOverlap, HalfSharedAtKFour) {
  const auto lex = overlap_lexicon();
  VectorSpace en("en", 2), fr("fr", 2);
  const std::map<std::string, double> en_angles{{"q", 0}, {"A", 0.1}, {"B", 0.2}, {"C", 0.3},
                                                {"D", 0.4}, {"E", 2.0}, {"F", 2.5}};
  const std::map<std::string, double> fr_angles{{"q", 0}, {"A", 0.1}, {"B", 0.2}, {"E", 0.3},
                                                {"F", 0.4}, {"C", 2.0}, {"D", 2.5}};
  for (const auto& [f, ang] : en_angles) en.add(f, at_angle(ang));
  for (const auto& [f, ang] : fr_angles) fr.add(f, at_angle(ang));
  const StaticIndex a(en), b(fr);
  const auto score = neighbors_overlap("q", {&a}, {&b}, lex, 4);
  EXPECT_EQ(score.value, 0.5);
  EXPECT_EQ(score.metric, Metric::kNeighborsOverlap);
  EXPECT_EQ(score.survivors_forward, 4u);
  // Disjoint at k = 2: {A,B} versus {E,F} after moving A and B away in fr.
  VectorSpace fr2("fr", 2);
  const std::map<std::string, double> fr2_angles{{"q", 0}, {"E", 0.1}, {"F", 0.2}, {"A", 2.0},
                                                 {"B", 2.2}, {"C", 2.4}, {"D", 2.6}};
  for (const auto& [f, ang] : fr2_angles) fr2.add(f, at_angle(ang));
  const StaticIndex c(fr2);
  EXPECT_EQ(neighbors_overlap("q", {&a}, {&c}, lex, 2).value, 0.0);
}

TEST(NeighborsOverlap, UntranslatableNeighborsContributeNothing) {
  std::vector<LexiconRow> rows{{"q", "d", "en", "q"}, {"q", "d", "fr", "q"},
                               {"a", "d", "en", "a"}, {"a", "d", "fr", "a"},
                               {"b", "d", "en", "b"}};
  const auto lex = ConceptLexicon::from_rows(rows);
  VectorSpace en("en", 2), fr("fr", 2);
  en.add("q", Vec{1, 0});
  en.add("a", Vec{1, 0.1});
  en.add("b", Vec{1, 0.2});
  fr.add("q", Vec{1, 0});
  fr.add("a", Vec{1, 0.1});
  const StaticIndex a(en), b(fr);
  // en concepts {a, b}, fr concepts {a}: 1 shared over max(2, 1).
  EXPECT_EQ(neighbors_overlap("q", {&a}, {&b}, lex, 2).value, 0.5);
}

TEST(Metrics, MatchNaiveDefinitionsOnMicroInstances) {
  Rng rng(20240601);
  std::size_t compared = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t dim = 1 + rng.below(3);
    const auto m = testing::make_micro(rng, dim);
    const auto lex = m.lexicon();
    std::map<std::string, std::shared_ptr<NeighborIndex>> statics, clouds;
    for (const std::string lang : {"en", "fr"}) {
      statics[lang] = m.static_index(lang);
      clouds[lang] = m.cloud_index(lang);
    }
    const std::size_t k = 1 + rng.below(4);
    const oracle::Geometry gs_en{&m.spaces.at("en"), nullptr};
    const oracle::Geometry gs_fr{&m.spaces.at("fr"), nullptr};
    const oracle::Geometry gc_en{nullptr, &m.clouds.at("en")};
    const oracle::Geometry gc_fr{nullptr, &m.clouds.at("fr")};
    const MetricConfig cfg{k, 3, CorrelationMethod::kPearson};
    for (std::size_t c = 0; c < m.concepts; ++c) {
      const std::string cid = fmt::format("k{}", c);
      auto check = [&](std::optional<double> expected, auto&& compute) {
        double got = 0.0;
        bool ok = true;
        try {
          got = compute();
        } catch (const Error&) {
          ok = false;
        }
        ASSERT_EQ(ok, expected.has_value()) << "instance " << inst << " concept " << cid;
        if (ok) {
          EXPECT_NEAR(got, *expected, 1e-12) << "instance " << inst << " concept " << cid;
          ++compared;
        }
      };
      for (int kind = 0; kind < 2; ++kind) {
        const auto& idx = kind == 0 ? statics : clouds;
        const Side en{idx.at("en").get()}, fr{idx.at("fr").get()};
        const auto& g_en = kind == 0 ? gs_en : gc_en;
        const auto& g_fr = kind == 0 ? gs_fr : gc_fr;
        check(oracle::snc_direction(cid, "en", g_en, "fr", g_fr, m.olex, k, 3),
              [&] { return snc_unidirectional(cid, en, fr, lex, cfg).value; });
        check(oracle::snc(cid, "fr", g_fr, "en", g_en, m.olex, k, 3),
              [&] { return snc_bidirectional(cid, fr, en, lex, cfg).value; });
        check(oracle::neighbors_overlap(cid, "en", g_en, "fr", g_fr, m.olex, k),
              [&] { return neighbors_overlap(cid, en, fr, lex, k).value; });
      }
    }
  }
  EXPECT_GT(compared, 100u);
}

TEST(Metrics, TransformInvariance) {
  Rng rng(5);
  const auto forms = shared_forms(60);
  const auto lex = testing::make_lexicon(60, 4, {"en", "fr"}, true);
  const auto en = testing::random_space("en", forms, 6, rng);
  const auto fr = testing::random_space("fr", forms, 6, rng);
  const auto q = testing::random_orthogonal(6, rng);
  const StaticIndex a(en), b(fr), rot(testing::transform(fr, q, 2.75));
  const MetricConfig cfg{10, 5, CorrelationMethod::kPearson};
  for (std::size_t c = 0; c < 60; ++c) {
    const auto id = testing::concept_name(c);
    EXPECT_NEAR(snc_bidirectional(id, {&a}, {&b}, lex, cfg).value,
                snc_bidirectional(id, {&a}, {&rot}, lex, cfg).value, 1e-6);
  }
}

TEST(Metrics, SingletonCloudsDegenerateExactly) {
  Rng rng(6);
  const auto forms = shared_forms(30);
  const auto lex = testing::make_lexicon(30, 3, {"en", "fr"}, true);
  const auto en = testing::random_space("en", forms, 4, rng);
  const auto fr = testing::random_space("fr", forms, 4, rng);
  const StaticIndex sa(en), sb(fr);
  const CloudIndex ca(testing::singleton_clouds(en), CloudAggregation::kMin);
  const CloudIndex cb(testing::singleton_clouds(fr), CloudAggregation::kMin);
  const MetricConfig cfg{7, 3, CorrelationMethod::kPearson};
  for (std::size_t c = 0; c < 30; ++c) {
    const auto id = testing::concept_name(c);
    EXPECT_EQ(snc_bidirectional(id, {&sa}, {&sb}, lex, cfg).value,
              snc_bidirectional(id, {&ca}, {&cb}, lex, cfg).value);
  }
}

TEST(ComputeTable, TwoLanguagesFiveConcepts) {
  Rng rng(7);
  const auto forms = shared_forms(25);
  const auto lex = testing::make_lexicon(25, 5, {"en", "fr"}, true);
  const auto indexes = testing::static_indexes(
      {testing::random_space("en", forms, 4, rng), testing::random_space("fr", forms, 4, rng)});
  TableRequest req;
  req.languages = {"fr", "en"};
  req.config = {8, 3, CorrelationMethod::kPearson};
  req.concepts = std::vector<std::string>{"c0004", "c0000", "c0001", "c0002", "c0003"};
  const auto table = compute_table(req, lex, indexes);
  EXPECT_EQ(table.size(), 5u);
  EXPECT_EQ(table.scored(), 5u);
  EXPECT_EQ(table.k, 8u);
  EXPECT_EQ(table.pairs(), (std::vector<LanguagePair>{LanguagePair::of("en", "fr")}));
  for (const auto& [key, cell] : table.cells()) {
    EXPECT_TRUE(cell.reason.empty());
    EXPECT_EQ(*cell.value, snc_bidirectional(cell.concept_id, {indexes.at("en").get()},
                                             {indexes.at("fr").get()}, lex, req.config)
                               .value);
  }
}

TEST(ComputeTable, MissingConceptBecomesReasonCodedGap) {
  Rng rng(8);
  auto rows = testing::lexicon_rows(5, 1, {"en", "fr"}, true);
  rows.pop_back();  // fr loses c0004
  std::vector<LexiconRow> more;
  for (int i = 5; i < 20; ++i) {
    for (const std::string lang : {"en", "fr"}) {
      more.push_back({testing::concept_name(i), "d00", lang, fmt::format("w{}", i)});
    }
  }
  rows.insert(rows.end(), more.begin(), more.end());
  const auto lex = ConceptLexicon::from_rows(rows);
  std::vector<std::string> en_forms = shared_forms(20), fr_forms;
  for (const auto& f : en_forms) {
    if (f != "w4") fr_forms.push_back(f);
  }
  const auto indexes = testing::static_indexes({testing::random_space("en", en_forms, 4, rng),
                                                testing::random_space("fr", fr_forms, 4, rng)});
  TableRequest req;
  req.languages = {"en", "fr"};
  req.config = {6, 3, CorrelationMethod::kPearson};
  req.concepts = std::vector<std::string>{"c0000", "c0001", "c0002", "c0003", "c0004"};
  const auto table = compute_table(req, lex, indexes);
  EXPECT_EQ(table.size(), 5u);
  EXPECT_EQ(table.scored(), 4u);
  const auto* gap = table.find(Metric::kSncStatic, LanguagePair::of("en", "fr"), "c0004");
  ASSERT_NE(gap, nullptr);
  EXPECT_FALSE(gap->value);
  EXPECT_EQ(gap->reason, "concept_not_lexicalized");
}

TEST(ComputeTable, ThreeLanguagesGiveThreePairs) {
  Rng rng(9);
  const auto forms = shared_forms(20);
  const auto lex = testing::make_lexicon(20, 2, {"de", "en", "fr"}, true);
  const auto indexes = testing::static_indexes({testing::random_space("de", forms, 3, rng),
                                                testing::random_space("en", forms, 3, rng),
                                                testing::random_space("fr", forms, 3, rng)});
  TableRequest req;
  req.metric = Metric::kNeighborsOverlap;
  req.languages = {"de", "en", "fr"};
  req.config = {5, 3, CorrelationMethod::kPearson};
  const auto table = compute_table(req, lex, indexes);
  EXPECT_EQ(table.pairs().size(), 3u);
  EXPECT_EQ(table.size(), 60u);
  EXPECT_EQ(table.metrics(), std::vector<Metric>{Metric::kNeighborsOverlap});

  req.jobs = 4;
  EXPECT_EQ(compute_table(req, lex, indexes), table);
  req.languages = {"de", "xx"};
  EXPECT_EQ(code_of([&] { compute_table(req, lex, indexes); }), ErrorCode::kUnknownLanguage);
}

TEST(ComputeTable, RestrictionNarrowsCandidates) {
  Rng rng(10);
  const auto forms = shared_forms(20);
  const auto lex = testing::make_lexicon(20, 2, {"en", "fr"}, true);
  const auto indexes = testing::static_indexes(
      {testing::random_space("en", forms, 3, rng), testing::random_space("fr", forms, 3, rng)});
  RestrictionMap restrictions;
  for (const std::string lang : {"en", "fr"}) {
    FormSet keep;
    for (int i = 0; i < 20; i += 2) keep.insert(fmt::format("w{}", i));
    restrictions[lang] = keep;
  }
  const Side en{indexes.at("en").get(), &restrictions.at("en")};
  const auto profile = snc_profile("c0001", en, {indexes.at("fr").get()}, lex, 20);
  EXPECT_EQ(profile.entries.size(), 10u);
  EXPECT_TRUE(profile.shortfall);
  for (const auto& e : profile.entries) EXPECT_TRUE(restrictions.at("en").contains(e.neighbor));
}

TEST(AlignmentTable, InsertMergeAndOnly) {
  AlignmentTable t;
  AlignmentCell c{Metric::kSncStatic, LanguagePair::of("a", "b"), "x", 0.5, 3, 4, ""};
  t.insert(c);
  EXPECT_EQ(code_of([&] { t.insert(c); }), ErrorCode::kInvalidArgument);
  AlignmentTable u;
  u.provenance["seed"] = "1";
  AlignmentCell g{Metric::kNeighborsOverlap, LanguagePair::of("a", "b"), "x", std::nullopt, 0, 0,
                  "too_few_survivors"};
  u.insert(g);
  t.merge(u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.scored(), 1u);
  EXPECT_EQ(t.provenance.at("seed"), "1");
  EXPECT_EQ(t.only(Metric::kNeighborsOverlap).size(), 1u);
  EXPECT_EQ(t.metrics().size(), 2u);
  EXPECT_EQ(t.find(Metric::kSncAve, LanguagePair::of("a", "b"), "x"), nullptr);
}

}  // namespace
}  // namespace lexalign
