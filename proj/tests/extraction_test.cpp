// Copyright 2026 The ddkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ddkit/extraction.hpp"

#include "ddkit/treebank.hpp"
#include "doctest.h"

namespace ddkit {
namespace {

Extraction Extract(const char *text) {
  return ExtractDefinites(ParseTreebank(text, "t"));
}

const DefiniteDescription *FindBySurface(const Extraction &ex,
                                         const std::string &surface) {
  for (const auto &dd : ex.definites) {
    if (dd.surface == surface) return &dd;
  }
  return nullptr;
}

TEST_CASE("plain definite") {
  auto ex = Extract("(S (NP (DT The) (NN rig)) (VP (VBD stopped)))");
  REQUIRE(ex.definites.size() == 1);
  const auto &dd = ex.definites[0];
  CHECK(dd.key == MentionKey{1, 1});
  CHECK(dd.head == "rig");
  CHECK(dd.head_pos == "NN");
  CHECK(dd.premodifiers.empty());
  CHECK(dd.features == FeatureSet{});
  CHECK(dd.features.Bits() == "0000000");
}

TEST_CASE("nested definites each yield a record") {
  auto ex = Extract(
      "(S (NP (NP (DT the) (NNS inequities)) (PP (IN in) (NP (DT the) (JJ "
      "current) (NN land-ownership) (NN system)))) (VP (VBP persist)))");
  REQUIRE(ex.definites.size() == 3);
  const auto *outer = FindBySurface(
      ex, "the inequities in the current land-ownership system");
  REQUIRE(outer);
  CHECK(outer->key == MentionKey{1, 1});
  CHECK(outer->head == "inequities");
  CHECK(outer->features.has_relative_or_pp_postmod);
  const auto *inner = FindBySurface(ex, "the current land-ownership system");
  REQUIRE(inner);
  CHECK(inner->head == "system");
  CHECK(inner->premodifiers ==
        std::vector<TaggedToken>{{"current", "JJ"}, {"land-ownership", "NN"}});
}

TEST_CASE("apposition in either order") {
  auto ex = Extract(
      "(S (NP (NP (NNP Rudolph) (NNP Giuliani)) (, ,) (NP (DT the) (JJ former) "
      "(NN crime) (NN buster))) (VP (VBD spoke)))");
  const auto *dd = FindBySurface(ex, "the former crime buster");
  REQUIRE(dd);
  CHECK(dd->features.in_apposition);
  CHECK(dd->head == "buster");

  auto rev = Extract(
      "(S (NP (NP (DT the) (NN mayor)) (, ,) (NP (NNP Rudolph) (NNP "
      "Giuliani))) (VP (VBD spoke)))");
  const auto *m = FindBySurface(rev, "the mayor");
  REQUIRE(m);
  CHECK(m->features.in_apposition);
}

TEST_CASE("head finding") {
  auto house = Extract("(NP (DT the) (JJ 80-year-old) (NN house))");
  REQUIRE(house.definites.size() == 1);
  CHECK(house.definites[0].head == "house");
  CHECK(house.definites[0].premodifiers ==
        std::vector<TaggedToken>{{"80-year-old", "JJ"}});

  auto fact = Extract(
      "(NP (DT the) (NN fact) (SBAR (IN that) (S (NP (NN language)) (VP (VBD "
      "did) (RB not) (VP (VB exist))))))");
  REQUIRE(fact.definites.size() == 1);
  CHECK(fact.definites[0].head == "fact");
  CHECK(fact.definites[0].head_pos == "NN");

  auto best = Extract("(S (NP (DT the) (JJ best)) (VP (VBD won)))");
  CHECK(best.definites.empty());
  REQUIRE(best.skipped.size() == 1);
  CHECK(best.skipped[0].key == MentionKey{1, 1});

  Document d = ParseTreebank("(NP (DT the) (JJ best))", "t");
  CHECK_THROWS_AS(FindHead(d.sentences[0]), HeadNotFound);
}

TEST_CASE("surface features") {
  auto fact = Extract(
      "(S (PP (IN despite) (NP (DT the) (NN fact) (SBAR (IN that) (S (NP (JJ "
      "few) (JJ local) (NNS politicians)) (VP (VBD came)))))))");
  REQUIRE(fact.definites.size() == 1);
  CHECK(fact.definites[0].features.has_np_complement);
  CHECK(fact.definites[0].features.has_relative_or_pp_postmod);

  auto quarter = Extract(
      "(NP (NP (JJ net) (NN income)) (PP (IN for) (NP (DT the) (JJ third) (NN "
      "quarter))))");
  const auto *q = FindBySurface(quarter, "the third quarter");
  REQUIRE(q);
  CHECK(q->features.has_temporal_head);
  CHECK_FALSE(q->features.has_unexplanatory_modifier);

  auto war = Extract("(S (NP (DT the) (NNP Iran-Iraq) (NN war)) (VP (VBD ended)))");
  REQUIRE(war.definites.size() == 1);
  CHECK(war.definites[0].features.has_proper_head_or_premod);
  CHECK(war.definites[0].features.Bits() == "0000001");

  auto raise = Extract(
      "(S (NP (PRP It)) (VP (VBZ is) (NP (NP (DT the) (JJ first) (NN raise)) "
      "(SBAR (S (NP (PRP he)) (VP (MD can) (VP (VB remember) (PP (IN in) (NP "
      "(CD eight) (NNS years))))))))))");
  const auto *r = FindBySurface(raise, "the first raise he can remember in eight years");
  REQUIRE(r);
  CHECK(r->head == "raise");
  CHECK(r->features.has_unexplanatory_modifier);
  CHECK(r->features.has_relative_or_pp_postmod);
  CHECK_FALSE(r->features.has_np_complement);
}

TEST_CASE("plural temporal heads") {
  auto ex = Extract("(S (PP (IN During) (NP (DT the) (JJ past) (CD 15) (NNS years))))");
  REQUIRE(ex.definites.size() == 1);
  CHECK(ex.definites[0].features.has_temporal_head);
  auto glass = Extract("(S (NP (DT the) (NNS glass)))");
  CHECK_FALSE(glass.definites[0].features.has_temporal_head);
}

TEST_CASE("copula") {
  auto ex = Extract(
      "(S (NP (DT the) (NN actor)) (VP (VBZ is) (NP (DT the) (NN star))))");
  const auto *subj = FindBySurface(ex, "the actor");
  const auto *pred = FindBySurface(ex, "the star");
  REQUIRE(subj);
  REQUIRE(pred);
  CHECK_FALSE(subj->features.in_copula);
  CHECK(pred->features.in_copula);

  auto other = Extract("(S (NP (PRP He)) (VP (VBD saw) (NP (DT the) (NN star))))");
  CHECK_FALSE(other.definites[0].features.in_copula);
}

TEST_CASE("first non-punctuation token decides") {
  auto ex = Extract("(S (NP (`` ``) (DT The) (NN rig) ('' '')) (VP (VBD sank)))");
  REQUIRE(ex.definites.size() == 1);
  CHECK(ex.definites[0].head == "rig");
  CHECK(Extract("(S (NP (DT a) (NN rig)))").definites.empty());
  CHECK(Extract("(S (NP (DT these) (NNS rigs)))").definites.empty());
}

TEST_CASE("every surface starts with the") {
  auto ex = Extract(
      "(S (NP (NP (DT The) (NN price)) (PP (IN of) (NP (DT the) (NN "
      "apartment)))) (VP (VBD rose) (PP (IN in) (NP (DT the) (JJ past) (CD 15) "
      "(NNS years)))))");
  CHECK(ex.definites.size() == 4);
  for (const auto &dd : ex.definites) {
    CHECK(ToLower(dd.surface.substr(0, 3)) == "the");
    CHECK(dd.head_pos.rfind("NN", 0) == 0);
  }
}

TEST_CASE("lexicon configuration") {
  LexiconConfig d = LexiconConfig::Defaults();
  CHECK(d.unexplanatory_modifiers.count("first"));
  CHECK(d.temporal_heads.count("quarter"));
  CHECK(d.complement_taking_nouns.count("fact"));
  CHECK(d.copula_forms.count("'s"));
  CHECK_NOTHROW(d.Validate());

  LexiconConfig custom =
      LexiconConfig::FromJson(R"({"temporal_heads": ["season"]})");
  CHECK(custom.temporal_heads == std::set<std::string>{"season"});
  CHECK(custom.unexplanatory_modifiers == d.unexplanatory_modifiers);
  CHECK_THROWS_AS(LexiconConfig::FromJson(R"({"temporal": ["x"]})"), Error);
  CHECK_THROWS_AS(LexiconConfig::FromJson(R"({"temporal_heads": []})"), Error);
  CHECK_THROWS_AS(LexiconConfig::FromJson(R"({"temporal_heads": ["Year"]})"), Error);

  Document doc = ParseTreebank("(S (NP (DT the) (NN season)))", "t");
  CHECK(ExtractDefinites(doc, custom).definites[0].features.has_temporal_head);
  CHECK_FALSE(ExtractDefinites(doc).definites[0].features.has_temporal_head);
}

TEST_CASE("extraction is stable under re-parsing") {
  const char *text =
      "(S (NP (NP (DT the) (NNS inequities)) (PP (IN in) (NP (DT the) (NN "
      "system)))) (VP (VBD grew) (NP (DT the) (JJ last) (NN year))))";
  Document a = ParseTreebank(text, "t");
  Document b = ParseTreebank(ToBracketed(a), "t");
  auto ea = ExtractDefinites(a);
  auto eb = ExtractDefinites(b);
  REQUIRE(ea.definites.size() == eb.definites.size());
  for (std::size_t i = 0; i < ea.definites.size(); ++i) {
    CHECK(ea.definites[i].key == eb.definites[i].key);
    CHECK(ea.definites[i].features == eb.definites[i].features);
  }
}

}  // namespace
}  // namespace ddkit
