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

#include "ddkit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "json.hpp"

namespace ddkit {

namespace {

using Json = nlohmann::json;

std::size_t AddCategory(std::vector<std::string> &universe,
                        const std::string &c) {
  auto it = std::find(universe.begin(), universe.end(), c);
  if (it != universe.end()) return static_cast<std::size_t>(it - universe.begin());
  universe.push_back(c);
  return universe.size() - 1;
}

std::string Full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Left-aligned first column, right-aligned rest, two-space gutters.
std::string Table(const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width;
  for (const auto &row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (const auto &row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      const std::string pad(width[i] - row[i].size(), ' ');
      line += i == 0 ? row[i] + pad : pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string Percent2(std::int64_t part, std::int64_t whole) {
  if (whole == 0) return "-";
  return Fixed2(100.0 * static_cast<double>(part) / static_cast<double>(whole));
}

std::string ConfusionText(const ConfusionMatrix &conf) {
  std::string out = "confusion A=" + conf.coder_a + " B=" + conf.coder_b + "\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"A\\B"};
  for (const auto &c : conf.categories) header.push_back(c);
  header.push_back("total");
  rows.push_back(header);
  auto row_totals = conf.row_totals();
  for (std::size_t x = 0; x < conf.categories.size(); ++x) {
    std::vector<std::string> row = {conf.categories[x]};
    for (auto v : conf.cells[x]) row.push_back(std::to_string(v));
    row.push_back(std::to_string(row_totals[x]));
    rows.push_back(row);
  }
  std::vector<std::string> last = {"total"};
  for (auto v : conf.column_totals()) last.push_back(std::to_string(v));
  last.push_back(std::to_string(conf.total()));
  rows.push_back(last);
  return out + Table(rows);
}

std::string ConfusionTsv(const ConfusionMatrix &conf) {
  std::string out = "confusion\t" + conf.coder_a + "\t" + conf.coder_b + "\n";
  out += "A\\B";
  for (const auto &c : conf.categories) out += "\t" + c;
  out += "\n";
  for (std::size_t x = 0; x < conf.categories.size(); ++x) {
    out += conf.categories[x];
    for (auto v : conf.cells[x]) out += "\t" + std::to_string(v);
    out += "\n";
  }
  return out;
}

Json ConfusionJson(const ConfusionMatrix &conf) {
  return Json{{"coder_a", conf.coder_a},
              {"coder_b", conf.coder_b},
              {"categories", conf.categories},
              {"cells", conf.cells},
              {"total", conf.total()}};
}

}  // namespace

Corpus GroupByDocument(std::vector<AnnotationSet> sets) {
  Corpus corpus;
  std::map<std::pair<std::string, std::string>, AnnotationSet> by_pair;
  for (auto &set : sets) {
    if (std::find(corpus.coders.begin(), corpus.coders.end(), set.coder_id()) ==
        corpus.coders.end()) {
      corpus.coders.push_back(set.coder_id());
    }
    if (std::find(corpus.docs.begin(), corpus.docs.end(), set.doc_id()) ==
        corpus.docs.end()) {
      corpus.docs.push_back(set.doc_id());
    }
    auto key = std::make_pair(set.doc_id(), set.coder_id());
    if (by_pair.count(key)) {
      throw Error("coder " + set.coder_id() + " annotates " + set.doc_id() +
                  " twice");
    }
    by_pair.emplace(std::move(key), std::move(set));
  }
  std::vector<std::string> missing;
  for (const auto &doc : corpus.docs) {
    std::vector<AnnotationSet> row;
    for (const auto &coder : corpus.coders) {
      auto it = by_pair.find({doc, coder});
      if (it == by_pair.end()) {
        missing.push_back(coder + ":" + doc);
      } else {
        row.push_back(std::move(it->second));
      }
    }
    corpus.sets.push_back(std::move(row));
  }
  if (!missing.empty()) throw CoverageMismatch(std::move(missing));
  return corpus;
}

CodingMatrix StackMatrices(const std::vector<std::string> &docs,
                           const std::vector<CodingMatrix> &matrices) {
  if (matrices.size() == 1) return matrices.front();
  std::vector<std::string> universe;
  for (const auto &m : matrices) {
    for (const auto &c : m.categories()) AddCategory(universe, c);
  }
  std::vector<std::string> items;
  std::vector<std::vector<std::int64_t>> counts;
  for (std::size_t d = 0; d < matrices.size(); ++d) {
    const CodingMatrix &m = matrices[d];
    std::vector<std::size_t> column;
    for (const auto &c : m.categories()) column.push_back(AddCategory(universe, c));
    for (std::size_t i = 0; i < m.num_items(); ++i) {
      items.push_back(docs.at(d) + ":" + m.items()[i]);
      std::vector<std::int64_t> row(universe.size(), 0);
      for (std::size_t j = 0; j < m.num_categories(); ++j) {
        row[column[j]] = m.count(i, j);
      }
      counts.push_back(std::move(row));
    }
  }
  return CodingMatrix(std::move(items), std::move(universe), std::move(counts));
}

ConfusionMatrix SumConfusions(const std::vector<ConfusionMatrix> &parts) {
  ConfusionMatrix out;
  if (parts.empty()) return out;
  out.coder_a = parts.front().coder_a;
  out.coder_b = parts.front().coder_b;
  for (const auto &p : parts) {
    for (const auto &c : p.categories) AddCategory(out.categories, c);
  }
  const std::size_t m = out.categories.size();
  out.cells.assign(m, std::vector<std::int64_t>(m, 0));
  for (const auto &p : parts) {
    std::vector<std::size_t> idx;
    for (const auto &c : p.categories) idx.push_back(AddCategory(out.categories, c));
    for (std::size_t x = 0; x < p.categories.size(); ++x) {
      for (std::size_t y = 0; y < p.categories.size(); ++y) {
        out.cells[idx[x]][idx[y]] += p.cells[x][y];
      }
    }
  }
  return out;
}

CodingMatrix BuildCorpusMatrix(const Corpus &corpus) {
  std::vector<CodingMatrix> parts;
  for (const auto &sets : corpus.sets) parts.push_back(BuildCodingMatrix(sets));
  return StackMatrices(corpus.docs, parts);
}

ConfusionMatrix BuildCorpusConfusion(const Corpus &corpus, std::size_t coder_a,
                                     std::size_t coder_b) {
  std::vector<ConfusionMatrix> parts;
  for (const auto &sets : corpus.sets) {
    parts.push_back(MakeConfusionMatrix(sets.at(coder_a), sets.at(coder_b)));
  }
  return SumConfusions(parts);
}

std::string Fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string RenderAgreement(const AgreementSummary &s, OutputFormat format) {
  const KappaResult &k = s.kappa;
  const std::size_t items = k.per_item_s.size();
  std::string out;
  if (format == OutputFormat::kJson) {
    Json j{{"coders", s.coders},
           {"documents", s.docs},
           {"items", items},
           {"categories", s.categories},
           {"T", k.t},
           {"Z", k.z},
           {"PA", k.pa},
           {"PE", k.pe},
           {"K", k.k},
           {"per_item_S", k.per_item_s}};
    if (!s.per_class.empty()) {
      Json rows = Json::array();
      for (const auto &r : s.per_class) {
        rows.push_back({{"category", r.category},
                        {"total", r.total},
                        {"comparisons", r.comparisons},
                        {"agreements", r.agreements},
                        {"disagreements", r.disagreements()},
                        {"percentage", r.percentage ? Json(*r.percentage)
                                                    : Json(nullptr)}});
      }
      j["per_class"] = rows;
    }
    if (!s.confusion.empty()) {
      Json mats = Json::array();
      for (const auto &c : s.confusion) mats.push_back(ConfusionJson(c));
      j["confusion"] = mats;
    }
    if (s.entity) {
      j["entity"] = {{"class", s.entity_class},
                     {"eligible", s.entity->eligible},
                     {"entity_agree", s.entity->entity_agree}};
    }
    return j.dump(2) + "\n";
  }

  if (format == OutputFormat::kTsv) {
    out += "metric\tvalue\n";
    out += "coders\t" + std::to_string(s.coders) + "\n";
    out += "documents\t" + std::to_string(s.docs) + "\n";
    out += "items\t" + std::to_string(items) + "\n";
    out += "T\t" + std::to_string(k.t) + "\n";
    out += "Z\t" + Full(k.z) + "\n";
    out += "PA\t" + Full(k.pa) + "\n";
    out += "PE\t" + Full(k.pe) + "\n";
    out += "K\t" + Full(k.k) + "\n";
    if (s.entity) {
      out += "entity_eligible\t" + std::to_string(s.entity->eligible) + "\n";
      out += "entity_agree\t" + std::to_string(s.entity->entity_agree) + "\n";
    }
    if (!s.per_class.empty()) {
      out += "\nclass\ttotal\tcomparisons\tagreements\tdisagreements\tpercentage\n";
      for (const auto &r : s.per_class) {
        out += r.category + "\t" + std::to_string(r.total) + "\t" +
               std::to_string(r.comparisons) + "\t" +
               std::to_string(r.agreements) + "\t" +
               std::to_string(r.disagreements()) + "\t" +
               (r.percentage ? Full(*r.percentage) : std::string("-")) + "\n";
      }
    }
    for (const auto &c : s.confusion) out += "\n" + ConfusionTsv(c);
    return out;
  }

  out += "coders " + std::to_string(s.coders) + "\n";
  out += "documents " + std::to_string(s.docs) + "\n";
  out += "items " + std::to_string(items) + "\n";
  out += "categories";
  for (const auto &c : s.categories) out += " " + c;
  out += "\n";
  out += "T " + std::to_string(k.t) + "\n";
  out += "Z " + Fixed2(k.z) + "\n";
  out += "PA " + Fixed2(k.pa) + "\n";
  out += "PE " + Fixed2(k.pe) + "\n";
  out += "K " + Fixed2(k.k) + "\n";
  if (s.entity) {
    out += "entity " + s.entity_class + " " +
           std::to_string(s.entity->entity_agree) + "/" +
           std::to_string(s.entity->eligible) + " " +
           Percent2(s.entity->entity_agree, s.entity->eligible) + "%\n";
  }
  if (!s.per_class.empty()) {
    out += "\nper-class agreement\n";
    std::vector<std::vector<std::string>> rows = {
        {"class", "total", "comparisons", "agree", "disagree", "%agree"}};
    for (const auto &r : s.per_class) {
      rows.push_back({r.category, std::to_string(r.total),
                      std::to_string(r.comparisons),
                      std::to_string(r.agreements),
                      std::to_string(r.disagreements()),
                      r.percentage ? Fixed2(100.0 * *r.percentage) : "-"});
    }
    out += Table(rows);
  }
  for (const auto &c : s.confusion) out += "\n" + ConfusionText(c);
  return out;
}

ClassDistribution Distribution(const Corpus &corpus, std::size_t coder) {
  ClassDistribution d;
  d.coder = corpus.coders.at(coder);
  std::vector<AnnotationSet> own;
  for (const auto &sets : corpus.sets) own.push_back(sets.at(coder));
  d.categories = CategoryUniverse(own);
  d.totals.assign(d.categories.size(), 0);
  for (const auto &set : own) {
    for (const auto &r : set.records()) {
      ++d.totals[AddCategory(d.categories, r.label)];
      ++d.items;
    }
  }
  return d;
}

std::string RenderReport(const std::vector<ClassDistribution> &distributions,
                         const std::vector<ConfusionMatrix> &confusion,
                         OutputFormat format) {
  std::string out;
  if (format == OutputFormat::kJson) {
    Json j{{"distributions", Json::array()}, {"confusion", Json::array()}};
    for (const auto &d : distributions) {
      Json classes = Json::array();
      for (std::size_t i = 0; i < d.categories.size(); ++i) {
        classes.push_back(
            {{"category", d.categories[i]},
             {"total", d.totals[i]},
             {"percentage", d.items ? 100.0 * static_cast<double>(d.totals[i]) /
                                          static_cast<double>(d.items)
                                    : 0.0}});
      }
      j["distributions"].push_back(
          {{"coder", d.coder}, {"items", d.items}, {"classes", classes}});
    }
    for (const auto &c : confusion) j["confusion"].push_back(ConfusionJson(c));
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::kTsv) {
    out += "coder\tclass\ttotal\tpercentage\n";
    for (const auto &d : distributions) {
      for (std::size_t i = 0; i < d.categories.size(); ++i) {
        out += d.coder + "\t" + d.categories[i] + "\t" +
               std::to_string(d.totals[i]) + "\t" +
               (d.items ? Full(100.0 * static_cast<double>(d.totals[i]) /
                               static_cast<double>(d.items))
                        : std::string("-")) +
               "\n";
      }
    }
    for (const auto &c : confusion) out += "\n" + ConfusionTsv(c);
    return out;
  }
  bool first = true;
  for (const auto &d : distributions) {
    if (!first) out += "\n";
    first = false;
    out += "coder " + d.coder + "\n";
    std::vector<std::vector<std::string>> rows = {{"class", "total", "%"}};
    for (std::size_t i = 0; i < d.categories.size(); ++i) {
      rows.push_back({d.categories[i], std::to_string(d.totals[i]),
                      Percent2(d.totals[i], d.items)});
    }
    rows.push_back({"total", std::to_string(d.items), Percent2(d.items, d.items)});
    out += Table(rows);
  }
  for (const auto &c : confusion) out += "\n" + ConfusionText(c);
  return out;
}

}  // namespace ddkit
