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

#include "ddkit/agreement.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"

namespace ddkit {
namespace {

using Counts = std::vector<std::vector<std::int64_t>>;

CodingMatrix Matrix(const Counts &rows, std::vector<std::string> cats = {}) {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    items.push_back("i" + std::to_string(i + 1));
  }
  if (cats.empty()) {
    for (std::size_t j = 0; j < rows.at(0).size(); ++j) {
      cats.push_back("C" + std::to_string(j + 1));
    }
  }
  return CodingMatrix(items, cats, rows);
}

// Labels in key order 1/1, 1/2, ...
AnnotationSet Set(const std::string &coder, const std::vector<std::string> &labels,
                  SchemeId scheme = SchemeId::kExp1) {
  AnnotationSet s(coder, "doc", scheme);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    AnnotationRecord r;
    r.key = {1, static_cast<int>(i + 1)};
    r.surface = "the x";
    r.label = labels[i];
    s.Add(r);
  }
  return s;
}

AnnotationRecord Link(MentionKey key, MentionKey ante, const std::string &label = "COREF") {
  AnnotationRecord r;
  r.key = key;
  r.surface = "the x";
  r.label = label;
  r.antecedent = ante;
  return r;
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(CodingMatrix({}, {"A", "B"}, {}), InvalidMatrix);
  CHECK_THROWS_AS(Matrix({{2}}, {"A"}), InvalidMatrix);
  CHECK_THROWS_AS(Matrix({{1, 1}}, {"A", "A"}), InvalidMatrix);
  CHECK_THROWS_AS(Matrix({{2, 0}, {1, 0}}), InvalidMatrix);
  CHECK_THROWS_AS(Matrix({{3, -1}}), InvalidMatrix);
  CHECK_THROWS_AS(Matrix({{1, 0}}), InvalidMatrix);
  CodingMatrix ok = Matrix({{2, 1}, {0, 3}});
  CHECK(ok.coders() == 3);
  CHECK(ok.column_total(1) == 4);
}

TEST_CASE("worked example matrix") {
  CodingMatrix cm = Matrix({{0, 0, 3}, {0, 2, 1}, {0, 3, 0}, {0, 2, 1}, {3, 0, 0},
                            {1, 1, 1}, {0, 0, 3}, {0, 0, 3}, {0, 2, 1}, {3, 0, 0},
                            {3, 0, 0}, {3, 0, 0}, {3, 0, 0}},
                           {"ASH", "ASS", "LSU"});
  KappaResult r = Kappa(cm);
  CHECK(r.t == 39);
  CHECK(r.z == doctest::Approx(10.0));
  CHECK(r.per_item_s[0] == 1.0);
  CHECK(r.per_item_s[1] == doctest::Approx(1.0 / 3));
  CHECK(r.per_item_s[5] == 0.0);
  CHECK(cm.column_total(0) == 16);
  CHECK(cm.column_total(1) == 10);
  CHECK(cm.column_total(2) == 13);
  CHECK(r.pa == doctest::Approx(10.0 / 13).epsilon(1e-12));
  CHECK(r.pe == doctest::Approx(525.0 / 1521).epsilon(1e-12));
  CHECK(r.k == doctest::Approx(0.6475903614).epsilon(1e-9));
}

TEST_CASE("unanimity and degeneracy") {
  CHECK(Kappa(Matrix({{2, 0}, {0, 2}, {2, 0}})).k == 1.0);
  CHECK_THROWS_AS(Kappa(Matrix({{2, 0}, {2, 0}})), DegenerateChance);
  // One item, one disagreement: PA 0, PE 0.5.
  KappaResult neg = Kappa(Matrix({{1, 1}}));
  CHECK(neg.pa == 0.0);
  CHECK(neg.pe == 0.5);
  CHECK(neg.k == -1.0);
}

TEST_CASE("per-class agreement") {
  auto rows = PerClassAgreement(Matrix({{2, 1}}));
  CHECK(rows[0].agreements == 2);
  CHECK(rows[0].comparisons == 4);
  CHECK(*rows[0].percentage == 0.5);
  CHECK(rows[1].agreements == 0);
  CHECK(rows[1].comparisons == 2);
  CHECK(*rows[1].percentage == 0.0);

  auto full = PerClassAgreement(Matrix({{3, 0}}));
  CHECK(full[0].agreements == 6);
  CHECK(*full[0].percentage == 1.0);
  CHECK_FALSE(full[1].percentage);
  CHECK(full[1].disagreements() == 0);
}

TEST_CASE("build coding matrix from annotation sets") {
  auto cm = BuildCodingMatrix({Set("a", {"ASH", "ASS"}), Set("b", {"ASH", "ASH"})});
  CHECK(cm.categories() ==
        std::vector<std::string>{"ASH", "ASS", "LSU", "IDIOM", "DOUBT"});
  CHECK(cm.count(0, 0) == 2);
  CHECK(cm.count(1, 0) == 1);
  CHECK(cm.count(1, 1) == 1);

  auto three = BuildCodingMatrix(
      {Set("a", {"LSU"}), Set("b", {"LSU"}), Set("c", {"LSU"})});
  CHECK(three.count(0, 2) == 3);

  try {
    BuildCodingMatrix({Set("a", {"ASH", "ASS"}), Set("b", {"ASH"})});
    FAIL("expected CoverageMismatch");
  } catch (const CoverageMismatch &e) {
    CHECK(e.keys() == std::vector<std::string>{"b:1/2"});
  }
}

TEST_CASE("confusion matrix orientation") {
  auto conf = MakeConfusionMatrix(Set("A", {"ASH", "ASH", "ASS"}),
                                  Set("B", {"ASH", "ASS", "ASS"}));
  CHECK(conf.coder_a == "A");
  CHECK(conf.cells[0][0] == 1);
  CHECK(conf.cells[0][1] == 1);
  CHECK(conf.cells[1][1] == 1);
  CHECK(conf.cells[1][0] == 0);
  CHECK(conf.total() == 3);
  CHECK(conf.row_totals()[0] == 2);
  CHECK(conf.column_totals()[1] == 2);

  auto same = MakeConfusionMatrix(Set("A", {"ASH", "LSU"}), Set("B", {"ASH", "LSU"}));
  for (std::size_t x = 0; x < same.categories.size(); ++x) {
    for (std::size_t y = 0; y < same.categories.size(); ++y) {
      if (x != y) CHECK(same.cells[x][y] == 0);
    }
  }
}

TEST_CASE("confusion to coding") {
  ConfusionMatrix diag{{"X", "Y"}, {{3, 0}, {0, 2}}, "a", "b"};
  CodingMatrix cm = ConfusionToCoding(diag);
  CHECK(cm.num_items() == 5);
  CHECK(Kappa(cm).k == 1.0);

  ConfusionMatrix off{{"X", "Y"}, {{0, 1}, {0, 0}}, "a", "b"};
  CHECK(Kappa(ConfusionToCoding(off)).k == -1.0);
}

TEST_CASE("remapping") {
  AnnotationSet s("a", "d", SchemeId::kExp2);
  s.Add(Link({2, 1}, {1, 1}));
  AnnotationRecord u;
  u.key = {2, 2};
  u.surface = "the y";
  u.label = "UNFAM";
  s.Add(u);
  std::map<std::string, std::string> fr{{"COREF", "SUBS"},
                                        {"BRIDGE", "FIRST"},
                                        {"LSIT", "FIRST"},
                                        {"UNFAM", "FIRST"},
                                        {"DOUBT", "DOUBT"}};
  AnnotationSet b = RemapClasses(s, fr);
  CHECK(b.Find({2, 1})->label == "SUBS");
  CHECK(b.Find({2, 1})->antecedent == MentionKey{1, 1});
  CHECK(b.Find({2, 2})->label == "FIRST");
  CHECK(b.categories() == std::vector<std::string>{"SUBS", "FIRST", "DOUBT"});

  std::map<std::string, std::string> id{{"COREF", "COREF"}, {"BRIDGE", "BRIDGE"},
                                        {"LSIT", "LSIT"},   {"UNFAM", "UNFAM"},
                                        {"DOUBT", "DOUBT"}};
  CHECK(RemapClasses(s, id) == s);
  fr.erase("UNFAM");
  try {
    RemapClasses(s, fr);
    FAIL("expected UnmappedCategory");
  } catch (const UnmappedCategory &e) {
    CHECK(e.name() == "UNFAM");
  }
}

TEST_CASE("dropping items") {
  auto sets = std::vector<AnnotationSet>{Set("a", {"ASH", "DOUBT", "LSU"}),
                                         Set("b", {"ASH", "ASS", "DOUBT"})};
  CHECK(DropItemsWithLabels(sets, {}) == sets);
  auto any = DropItemsWithLabels(sets, {"DOUBT"});
  CHECK(any[0].size() == 1);
  CHECK(any[1].size() == 1);
  auto all = DropItemsWithLabels(sets, {"DOUBT"}, DropMode::kAllCoders);
  CHECK(all[0].size() == 3);
  auto everything = DropItemsWithLabels(sets, {"ASH", "ASS", "LSU", "IDIOM", "DOUBT"});
  CHECK(everything[0].empty());
  CHECK(everything[1].empty());
}

TEST_CASE("entity agreement through link closure") {
  auto coder = [](const std::string &name, MentionKey d5_ante) {
    AnnotationSet s(name, "d", SchemeId::kExp2);
    s.Add(Link({3, 1}, {1, 2}));
    s.Add(Link({5, 1}, d5_ante));
    return s;
  };
  // m4 = 2/1 linked to m2 = 1/2 by coder c.
  AnnotationSet a = coder("a", {1, 2});
  AnnotationSet b = coder("b", {1, 2});
  AnnotationSet c("c", "d", SchemeId::kExp2);
  c.Add(Link({2, 1}, {1, 2}));
  c.Add(Link({3, 1}, {1, 2}));
  c.Add(Link({5, 1}, {2, 1}));
  AnnotationRecord extra;
  extra.key = {2, 1};
  extra.surface = "the x";
  extra.label = "LSIT";
  a.Add(extra);
  b.Add(extra);
  auto r = ComputeEntityAgreement({a, b, c}, "COREF");
  CHECK(r.eligible == 2);
  CHECK(r.entity_agree == 2);

  AnnotationSet d = coder("d", {1, 1});
  AnnotationSet e = coder("e", {1, 2});
  auto disjoint = ComputeEntityAgreement({d, e}, "COREF");
  CHECK(disjoint.eligible == 2);
  CHECK(disjoint.entity_agree == 1);

  AnnotationSet missing("m", "d", SchemeId::kExp2);
  AnnotationRecord nolink;
  nolink.key = {3, 1};
  nolink.surface = "the x";
  nolink.label = "COREF";
  missing.Add(nolink);
  AnnotationSet other("o", "d", SchemeId::kExp2);
  other.Add(Link({3, 1}, {1, 1}));
  CHECK_THROWS_AS(ComputeEntityAgreement({other, missing}, "COREF"), MissingLink);
}

TEST_CASE("per-coder chains are no more generous than the union") {
  AnnotationSet a("a", "d", SchemeId::kExp2);
  a.Add(Link({5, 1}, {1, 2}));
  AnnotationSet b("b", "d", SchemeId::kExp2);
  b.Add(Link({5, 1}, {2, 1}));
  AnnotationSet c("c", "d", SchemeId::kExp2);
  c.Add(Link({5, 1}, {1, 2}));
  // A third coder links 2/1 to 1/2 elsewhere.
  for (AnnotationSet *s : {&a, &b}) {
    AnnotationRecord r;
    r.key = {2, 1};
    r.surface = "the x";
    r.label = "LSIT";
    s->Add(r);
  }
  c.Add(Link({2, 1}, {1, 2}));
  auto u = ComputeEntityAgreement({a, b, c}, "COREF", ChainMode::kUnion);
  auto p = ComputeEntityAgreement({a, b, c}, "COREF", ChainMode::kPerCoder);
  CHECK(u.entity_agree == 1);
  CHECK(p.entity_agree <= u.entity_agree);
}

TEST_CASE("c = 2 agreement is the fraction of identical labels") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 30);
    std::vector<std::string> la, lb;
    int same = 0;
    const std::vector<std::string> cats{"ASH", "ASS", "LSU"};
    for (int i = 0; i < n; ++i) {
      la.push_back(cats[rng() % 3]);
      lb.push_back(cats[rng() % 3]);
      same += la.back() == lb.back();
    }
    auto cm = BuildCodingMatrix({Set("a", la), Set("b", lb)});
    std::optional<KappaResult> r;
    try {
      r = Kappa(cm);
    } catch (const DegenerateChance &) {
      continue;
    }
    CHECK(r->pa == static_cast<double>(same) / n);
  }
}

}  // namespace
}  // namespace ddkit
