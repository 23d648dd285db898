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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ddkit/agreement.hpp"
#include "ddkit/annotation.hpp"
#include "ddkit/classifier.hpp"
#include "ddkit/report.hpp"
#include "ddkit/service.hpp"
#include "ddkit/treebank.hpp"
#include "json.hpp"

namespace ddkit {
namespace {

using Counts = std::vector<std::vector<std::int64_t>>;

// Collects failures for the criterion being evaluated.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(failed_) + " failure(s)";
    for (const auto &f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10f", v);
  return buf;
}

CodingMatrix Matrix(const Counts &rows, std::vector<std::string> cats) {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < rows.size(); ++i) items.push_back(std::to_string(i));
  return CodingMatrix(items, std::move(cats), rows);
}

// Reference kappa computed straight from the definitions, one item at a
// time, independent of the library.
struct Reference {
  double pa, pe, k;
};

Reference ReferenceKappa(const Counts &rows) {
  const double n = rows.size();
  double c = 0;
  for (auto v : rows[0]) c += v;
  double z = 0;
  std::vector<double> col(rows[0].size(), 0);
  for (const auto &r : rows) {
    double s = 0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      s += r[j] * (r[j] - 1.0);
      col[j] += r[j];
    }
    z += s / (c * (c - 1));
  }
  double pe = 0;
  for (double cj : col) pe += (cj / (n * c)) * (cj / (n * c));
  double pa = z / n;
  return {pa, pe, (pa - pe) / (1 - pe)};
}

// Direct enumeration of agreeing ordered coder pairs.
double BruteForcePa(const Counts &rows) {
  std::int64_t agree = 0, pairs = 0;
  for (const auto &r : rows) {
    std::vector<std::size_t> labels;
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (std::int64_t k = 0; k < r[j]; ++k) labels.push_back(j);
    }
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = 0; b < labels.size(); ++b) {
        if (a == b) continue;
        ++pairs;
        agree += labels[a] == labels[b];
      }
    }
  }
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

Counts RandomCounts(std::mt19937_64 &rng, int n, int m, int c) {
  Counts rows(n, std::vector<std::int64_t>(m, 0));
  for (auto &r : rows) {
    for (int k = 0; k < c; ++k) ++r[rng() % m];
  }
  return rows;
}

const std::vector<std::string> kExp1 = {"ASH", "ASS", "LSU", "IDIOM", "DOUBT"};

AnnotationSet LabelSet(const std::string &coder, const std::vector<std::string> &labels,
                       SchemeId scheme = SchemeId::kExp1) {
  AnnotationSet s(coder, "doc", scheme);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.Add({{static_cast<int>(i / 100 + 1), static_cast<int>(i % 100 + 1)},
           "the item",
           labels[i],
           std::nullopt,
           std::nullopt});
  }
  return s;
}

// Criterion 1.
Check WorkedKappa() {
  Check ch;
  Counts rows = {{0, 0, 3}, {0, 2, 1}, {0, 3, 0}, {0, 2, 1}, {3, 0, 0},
                 {1, 1, 1}, {0, 0, 3}, {0, 0, 3}, {0, 2, 1}, {3, 0, 0},
                 {3, 0, 0}, {3, 0, 0}, {3, 0, 0}};
  KappaResult r = Kappa(Matrix(rows, {"ASH", "ASS", "LSU"}));
  // Two-decimal display values.
  ch.Expect(Fixed2(r.pa) == "0.77", "PA " + Num(r.pa));
  ch.Expect(Fixed2(r.pe) == "0.35", "PE " + Num(r.pe));
  ch.Expect(Fixed2(r.k) == "0.65", "K " + Num(r.k));
  ch.Expect(std::fabs(r.k - 0.6476) <= 0.005, "K " + Num(r.k));
  ch.Expect(r.t == 39 && r.z == 10.0, "T/Z");
  // Exact fractions: Z = 10 over N = 13; column totals 16, 10, 13 over T = 39.
  const double pa = 10.0 / 13.0;
  const double pe = (16.0 * 16 + 10.0 * 10 + 13.0 * 13) / (39.0 * 39);
  ch.Expect(std::fabs(r.pa - pa) < 1e-12, "PA vs 10/13");
  ch.Expect(std::fabs(r.pe - pe) < 1e-12, "PE vs 525/1521");
  ch.Expect(std::fabs(r.k - (pa - pe) / (1 - pe)) < 1e-12, "K vs fractions");
  Reference ref = ReferenceKappa(rows);
  ch.Expect(std::fabs(r.k - ref.k) < 1e-12, "K vs reference");
  return ch;
}

// Criterion 2.
Check ConfusionKappa() {
  Check ch;
  ConfusionMatrix conf{kExp1,
                       {{274, 26, 32, 0, 0},
                        {9, 97, 44, 0, 0},
                        {8, 37, 465, 38, 1},
                        {0, 0, 1, 1, 0},
                        {3, 0, 4, 0, 0}},
                       "A",
                       "B"};
  ch.Expect(conf.total() == 1040, "total");
  std::int64_t diag = 0;
  for (int i = 0; i < 5; ++i) diag += conf.cells[i][i];
  ch.Expect(diag == 837, "diagonal");
  KappaResult r = Kappa(ConfusionToCoding(conf));
  // Oracle: PA is the diagonal share; PE pools both coders' marginals.
  std::vector<double> pooled(5, 0);
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      pooled[x] += conf.cells[x][y];
      pooled[y] += conf.cells[x][y];
    }
  }
  ch.Expect(pooled == std::vector<double>{626, 310, 1095, 41, 8}, "pooled marginals");
  double pe = 0;
  for (double p : pooled) pe += (p / 2080) * (p / 2080);
  const double pa = 837.0 / 1040;
  const double k = (pa - pe) / (1 - pe);
  ch.Expect(std::fabs(r.pa - pa) < 1e-12, "PA " + Num(r.pa));
  ch.Expect(std::fabs(r.pe - pe) < 1e-12, "PE " + Num(r.pe));
  ch.Expect(std::fabs(r.k - k) < 1e-12, "K vs oracle " + Num(r.k));
  ch.Expect(std::fabs(r.k - 0.68) <= 0.01, "K " + Num(r.k));
  return ch;
}

// Criterion 3.
Check PerClass() {
  Check ch;
  auto one = PerClassAgreement(Matrix({{2, 1, 0}}, {"I", "II", "III"}));
  ch.Expect(one[0].agreements == 2 && one[0].comparisons == 4, "class 1 counts");
  ch.Expect(one[0].percentage && *one[0].percentage == 0.5, "class 1 50%");
  ch.Expect(one[1].agreements == 0 && one[1].comparisons == 2, "class 2 counts");
  ch.Expect(one[1].percentage && *one[1].percentage == 0.0, "class 2 0%");
  ch.Expect(!one[2].percentage, "class 3 undefined");
  auto full = PerClassAgreement(Matrix({{3, 0}}, {"I", "II"}));
  ch.Expect(full[0].agreements == 6 && full[0].comparisons == 6, "6 of 6");

  // A class with total 930 at c = 3: 310 unanimous items.
  Counts rows(310, {3, 0});
  rows.push_back({0, 3});
  auto big = PerClassAgreement(Matrix(rows, {"I", "II"}));
  ch.Expect(big[0].total == 930, "total 930");
  ch.Expect(big[0].comparisons == 930 * (3 - 1), "comparisons 1860");
  PerClassRow row{"I", 930, 1860, 1646, 1646.0 / 1860};
  ch.Expect(row.disagreements() == 214, "disagree 214");
  ch.Expect(std::lround(*row.percentage * 100) == 88, "88%");
  return ch;
}

// Criterion 4.
Check TwoPath() {
  Check ch;
  std::mt19937_64 rng(20260101);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + rng() % 50;
    const int m = 2 + rng() % 4;
    std::vector<std::string> cats(kExp1.begin(), kExp1.begin() + m);
    std::vector<std::string> la, lb;
    for (int i = 0; i < n; ++i) {
      la.push_back(cats[rng() % m]);
      lb.push_back(cats[rng() % m]);
    }
    AnnotationSet a = LabelSet("a", la);
    AnnotationSet b = LabelSet("b", lb);
    std::optional<KappaResult> direct, via;
    bool d_deg = false, v_deg = false;
    try {
      direct = Kappa(BuildCodingMatrix({a, b}));
    } catch (const DegenerateChance &) {
      d_deg = true;
    }
    try {
      via = Kappa(ConfusionToCoding(MakeConfusionMatrix(a, b)));
    } catch (const DegenerateChance &) {
      v_deg = true;
    }
    ch.Expect(d_deg == v_deg, "degeneracy differs at trial " + std::to_string(trial));
    if (direct && via) {
      ++compared;
      ch.Expect(direct->pa == via->pa && direct->pe == via->pe && direct->k == via->k,
                "trial " + std::to_string(trial) + " K " + Num(direct->k) + " vs " +
                    Num(via->k));
    }
  }
  ch.Expect(compared > 900, "too few comparable trials");
  return ch;
}

// Criterion 5.
Check BruteForce() {
  Check ch;
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + rng() % 10;
    const int c = 2 + rng() % 3;
    const int m = 2 + rng() % 4;
    Counts rows = RandomCounts(rng, n, m, c);
    std::vector<std::string> cats;
    for (int j = 0; j < m; ++j) cats.push_back("c" + std::to_string(j));
    CodingMatrix cm = Matrix(rows, cats);
    double pa;
    try {
      pa = Kappa(cm).pa;
    } catch (const DegenerateChance &) {
      // PA is still defined; recompute it from the per-item agreement.
      pa = BruteForcePa(rows);
      ch.Expect(pa == 1.0, "degenerate matrix must be unanimous");
      continue;
    }
    ch.Expect(std::fabs(pa - BruteForcePa(rows)) <= 1e-12,
              "trial " + std::to_string(trial));
  }
  return ch;
}

// Criterion 6.
Check Properties() {
  Check ch;
  // Unanimous data over several categories.
  ch.Expect(Kappa(Matrix({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {3, 0, 0}}, {"A", "B", "C"})).k ==
                1.0,
            "unanimous K = 1");
  bool degenerate = false;
  try {
    Kappa(Matrix({{0, 3}, {0, 3}}, {"A", "B"}));
  } catch (const DegenerateChance &) {
    degenerate = true;
  }
  ch.Expect(degenerate, "DegenerateChance");

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng() % 20;
    const int m = 2 + rng() % 4;
    const int c = 2 + rng() % 3;
    Counts rows = RandomCounts(rng, n, m, c);
    std::vector<std::string> cats;
    for (int j = 0; j < m; ++j) cats.push_back("c" + std::to_string(j));
    std::optional<KappaResult> base;
    try {
      base = Kappa(Matrix(rows, cats));
    } catch (const DegenerateChance &) {
      continue;
    }
    Reference ref = ReferenceKappa(rows);
    ch.Expect(std::fabs(base->k - ref.k) < 1e-12, "reference K");

    Counts shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Counts permuted = shuffled;
    std::vector<std::string> pcats(m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) permuted[i][j] = shuffled[i][perm[j]];
    }
    for (int j = 0; j < m; ++j) pcats[j] = cats[perm[j]];
    KappaResult p = Kappa(Matrix(permuted, pcats));
    ch.Expect(p.k == base->k && p.pa == base->pa && p.pe == base->pe,
              "permutation invariance");

    // Merge two random categories.
    int x = rng() % m, y = rng() % m;
    if (x == y) y = (x + 1) % m;
    if (m > 2) {
      Counts merged;
      for (const auto &r : rows) {
        std::vector<std::int64_t> out;
        for (int j = 0; j < m; ++j) {
          if (j == y) continue;
          out.push_back(r[j] + (j == x ? r[y] : 0));
        }
        merged.push_back(out);
      }
      std::vector<std::string> mcats;
      for (int j = 0; j < m; ++j) {
        if (j != y) mcats.push_back(cats[j]);
      }
      ch.Expect(ReferenceKappa(merged).pa >= base->pa - 1e-15 &&
                    [&] {
                      try {
                        return Kappa(Matrix(merged, mcats)).pa >= base->pa;
                      } catch (const DegenerateChance &) {
                        return true;
                      }
                    }(),
                "PA non-decreasing under merge");
    }
  }

  // Merging through RemapClasses on annotation sets.
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> la, lb, lc;
    for (int i = 0; i < 30; ++i) {
      la.push_back(kExp1[rng() % 5]);
      lb.push_back(kExp1[rng() % 5]);
      lc.push_back(kExp1[rng() % 5]);
    }
    std::vector<AnnotationSet> sets{LabelSet("a", la), LabelSet("b", lb), LabelSet("c", lc)};
    std::map<std::string, std::string> mapping;
    for (const auto &cat : kExp1) mapping[cat] = cat;
    mapping[kExp1[rng() % 5]] = "MERGED";
    mapping[kExp1[rng() % 5]] = "MERGED";
    std::vector<AnnotationSet> merged;
    for (const auto &s : sets) merged.push_back(RemapClasses(s, mapping));
    try {
      double before = Kappa(BuildCodingMatrix(sets)).pa;
      double after = Kappa(BuildCodingMatrix(merged)).pa;
      ch.Expect(after >= before, "remap PA non-decreasing");
    } catch (const DegenerateChance &) {
    }
  }

  // 464 items; the coders mark 8, 27 and 0 doubts, one item shared.
  std::vector<std::vector<std::string>> labels(3, std::vector<std::string>(464, "LSIT"));
  for (int i = 0; i < 8; ++i) labels[0][i] = "DOUBT";
  for (int i = 7; i < 7 + 27; ++i) labels[1][i] = "DOUBT";
  std::vector<AnnotationSet> sets;
  for (int c = 0; c < 3; ++c) {
    sets.push_back(LabelSet("c" + std::to_string(c), labels[c], SchemeId::kExp2));
  }
  std::vector<int> doubts;
  for (const auto &s : sets) {
    doubts.push_back(std::count_if(s.records().begin(), s.records().end(),
                                   [](const auto &r) { return r.label == "DOUBT"; }));
  }
  ch.Expect(doubts == std::vector<int>{8, 27, 0}, "doubt pattern");
  auto kept = DropItemsWithLabels(sets, {"DOUBT"});
  const std::size_t expected = 464 - (8 + 27 + 0 - 1);
  ch.Expect(expected == 430, "arithmetic");
  for (const auto &s : kept) {
    ch.Expect(s.size() == 430, "kept " + std::to_string(s.size()));
  }
  return ch;
}

// Criterion 7.
Check ClassifierFixtures() {
  Check ch;
  auto label_of = [&](const char *text, const std::string &surface,
                      ClassifierConfig cfg = {}) -> std::optional<SystemLabel> {
    Document doc = ParseTreebank(text, "fixture");
    Classification cls = ClassifyDocument(doc, cfg);
    for (const auto &np : NpNodes(doc)) {
      if (np.node->Surface() == surface && cls.labels.count(np.key)) {
        return cls.labels.at(np.key);
      }
    }
    return std::nullopt;
  };
  auto expect = [&](const char *text, const std::string &surface, LabelKind kind) {
    auto l = label_of(text, surface);
    ch.Expect(l && l->kind == kind,
              surface + " -> " + (l ? LabelName(l->kind) : "missing"));
    return l;
  };

  auto rig = expect(
      "(S (NP (DT A) (NN rig)) (VP (VBD stood) (PP (IN in) (NP (DT the) (NN "
      "gulf)))))\n"
      "(S (NP (DT The) (NN rig)) (VP (VBD was) (VP (VBN built) (PP (IN around) "
      "(NP (CD 1980))))))",
      "The rig", LabelKind::kAnaphoricSameHead);
  ch.Expect(rig && rig->antecedent == MentionKey{1, 1}, "rig antecedent");

  expect(
      "(S (PP (IN Despite) (NP (DT the) (NN fact) (SBAR (IN that) (S (NP (JJ "
      "few) (JJ local) (JJ non-Jewish) (NNS politicians)) (VP (VBD "
      "attended)))))) (, ,) (NP (DT the) (NN rally)) (VP (VBD went) (ADVP (RB "
      "ahead))))",
      "the fact that few local non-Jewish politicians attended",
      LabelKind::kUnfamiliar);
  expect(
      "(S (NP (PRP It)) (VP (VBZ is) (NP (NP (DT the) (JJ first) (NN raise)) "
      "(SBAR (S (NP (PRP he)) (VP (MD can) (VP (VB remember) (PP (IN in) (NP "
      "(CD eight) (NNS years))))))))))",
      "the first raise he can remember in eight years", LabelKind::kUnfamiliar);
  expect(
      "(S (NP (NP (NNP Rudolph) (NNP Giuliani)) (, ,) (NP (DT the) (JJ former) "
      "(NN crime) (NN buster)) (, ,)) (VP (VBD spoke)))",
      "the former crime buster", LabelKind::kUnfamiliar);
  expect(
      "(S (NP (NP (JJ Net) (NN income)) (PP (IN for) (NP (DT the) (JJ third) "
      "(NN quarter)))) (VP (VBD rose)))",
      "the third quarter", LabelKind::kLargerSituation);
  expect("(S (NP (DT the) (NNP Iran-Iraq) (NN war)) (VP (VBD ended)))",
         "the Iran-Iraq war", LabelKind::kLargerSituation);
  expect("(S (NP (DT The) (NN rig)) (VP (VBD sank)))", "The rig",
         LabelKind::kUnclassified);

  // Both pipeline orders on a repeated temporal head.
  const char *years =
      "(S (NP (DT The) (NN year)) (VP (VBD began) (ADVP (RB badly))))\n"
      "(S (NP (DT The) (NN year)) (VP (VBD ended) (ADVP (RB well))))";
  ClassifierConfig classify_first;
  classify_first.order = Order::kClassifyFirst;
  Classification rf = ClassifyDocument(ParseTreebank(years, "y"), {});
  Classification cf = ClassifyDocument(ParseTreebank(years, "y"), classify_first);
  ch.Expect(rf.labels.at({2, 1}) == SystemLabel::Anaphoric({1, 1}), "resolve-first");
  ch.Expect(cf.labels.at({2, 1}) == SystemLabel::Of(LabelKind::kLargerSituation),
            "classify-first");
  return ch;
}

// Criterion 8.
Check FormatRoundTrip() {
  Check ch;
  std::mt19937_64 rng(99);
  const auto &scheme = AnnotationScheme::Get(SchemeId::kExp2);
  const std::vector<std::string> words = {"the", "price", "caf\xC3\xA9", "33-year-old",
                                          "housewife", "\"quoted\"", "#hash", "-"};
  std::ostringstream file;
  file << "ddann 1 EXP2\ncoder anna\ndoc big\n";
  std::ostringstream records;
  for (int i = 0; i < 10000; ++i) {
    MentionKey key{i / 10 + 2, i % 10 + 1};
    std::string surface = "the";
    for (int w = rng() % 4; w >= 0; --w) surface += " " + words[rng() % words.size()];
    const std::string &label = scheme.categories[rng() % scheme.categories.size()];
    std::string ante = "-";
    if (scheme.IsLinkClass(label)) {
      ante = MentionKey{1 + static_cast<int>(rng() % (key.sentence - 1)),
                        1 + static_cast<int>(rng() % 9)}
                 .str();
    }
    std::string comment = label == "DOUBT" ? "not sure #" + std::to_string(i) : "-";
    records << key.str() << '\t' << surface << '\t' << label << '\t' << ante << '\t'
            << comment << '\n';
    if (i == 5000) records << "# a comment line in the middle\n";
  }
  const std::string text = file.str() + records.str();
  AnnotationSet set = ReadDdann(text);
  ch.Expect(set.size() == 10000, "record count");
  std::string written = WriteDdann(set);
  std::string expected = text;
  expected.erase(expected.find("# a comment line in the middle\n"),
                 std::string("# a comment line in the middle\n").size());
  ch.Expect(written == expected, "byte-identical record section");
  ch.Expect(ReadDdann(written) == set, "record model identity");

  // Script-generated sessions, driven through the service.
  namespace fs = std::filesystem;
  fs::path root = fs::temp_directory_path() / ("ddkit_accept_" + std::to_string(rng()));
  fs::create_directories(root / "corpus");
  fs::copy_file(fs::path(DDKIT_TEST_DATA) / "corpus" / "text0.mrg",
                root / "corpus" / "text0.mrg");
  ServiceConfig cfg;
  cfg.corpus_dir = (root / "corpus").string();
  cfg.store_dir = (root / "store").string();
  {
    AnnotationService svc(cfg);
    Document doc = ReadTreebankFile((root / "corpus" / "text0.mrg").string());
    auto definites = ExtractDefinites(doc).definites;
    auto nps = NpNodes(doc);
    for (int session = 0; session < 50; ++session) {
      auto created = svc.CreateSession(
          nlohmann::json{{"coder", "c" + std::to_string(session)}, {"doc", "text0"}}
              .dump());
      std::string id = nlohmann::json::parse(created.body)["id"];
      for (const auto &dd : definites) {
        std::vector<MentionKey> before;
        for (const auto &np : nps) {
          if (np.key < dd.key) before.push_back(np.key);
        }
        std::vector<std::string> labels = {"LSIT", "UNFAM", "DOUBT"};
        if (!before.empty()) {
          labels.push_back("COREF");
          labels.push_back("BRIDGE");
        }
        std::string label = labels[rng() % labels.size()];
        auto path = *ScriptPathFor(label);
        nlohmann::json body{{"key", dd.key.str()}, {"label", label}};
        for (Answer a : path) body["answer_path"].push_back(a == Answer::kYes ? "yes" : "no");
        if (scheme.IsLinkClass(label)) body["antecedent"] = before[rng() % before.size()].str();
        if (label == "DOUBT") body["comment"] = "unsure";
        auto r = svc.PostAnswer(id, body.dump());
        ch.Expect(r.status == 200, "answer rejected: " + r.body);
      }
      AnnotationSet exported = ReadDdann(svc.Export(id).body);
      auto violations = ValidateAnnotationSet(exported, definites);
      ch.Expect(violations.empty(),
                "violations: " + (violations.empty() ? "" : violations[0].message));
    }
  }
  fs::remove_all(root);
  return ch;
}

}  // namespace
}  // namespace ddkit

int main() {
  using ddkit::Check;
  struct Criterion {
    const char *name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {"worked kappa example (PA 0.77, PE 0.35, K 0.65)", ddkit::WorkedKappa},
      {"two-coder confusion matrix kappa (K 0.68)", ddkit::ConfusionKappa},
      {"per-class pairwise agreement", ddkit::PerClass},
      {"two-path kappa equivalence over 1000 random pairs", ddkit::TwoPath},
      {"brute-force PA over 500 random matrices", ddkit::BruteForce},
      {"kappa property suite", ddkit::Properties},
      {"classifier fixture suite", ddkit::ClassifierFixtures},
      {"ddann round trip and validated sessions", ddkit::FormatRoundTrip},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    Check result;
    try {
      result = c.run();
    } catch (const std::exception &e) {
      result.Expect(false, std::string("exception: ") + e.what());
    }
    if (result.ok()) {
      std::printf("PASS  %s\n", c.name);
    } else {
      ++failed;
      std::printf("FAIL  %s: %s\n", c.name, result.Summary().c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
