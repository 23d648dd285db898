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
#include <unordered_set>

namespace ddkit {

namespace {

std::string JoinKeys(const std::vector<std::string> &keys) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(keys.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += keys[i];
  }
  if (keys.size() > shown) {
    out += ", ... (" + std::to_string(keys.size()) + " in all)";
  }
  return out;
}

// Sorted keys common to all sets; throws CoverageMismatch otherwise.
std::vector<MentionKey> CommonKeys(const std::vector<AnnotationSet> &sets) {
  std::set<MentionKey> all;
  for (const auto &set : sets) {
    for (const auto &r : set.records()) all.insert(r.key);
  }
  std::vector<std::string> missing;
  for (const auto &set : sets) {
    for (const auto &key : all) {
      if (!set.Find(key)) missing.push_back(set.coder_id() + ":" + key.str());
    }
  }
  if (!missing.empty()) throw CoverageMismatch(std::move(missing));
  return {all.begin(), all.end()};
}

std::size_t IndexOf(const std::vector<std::string> &categories,
                    const std::string &label) {
  auto it = std::find(categories.begin(), categories.end(), label);
  return static_cast<std::size_t>(it - categories.begin());
}

class UnionFind {
 public:
  MentionKey Find(MentionKey k) {
    auto it = parent_.find(k);
    if (it == parent_.end()) {
      parent_[k] = k;
      return k;
    }
    if (it->second == k) return k;
    MentionKey root = Find(it->second);
    parent_[k] = root;
    return root;
  }
  void Union(MentionKey a, MentionKey b) {
    MentionKey ra = Find(a);
    MentionKey rb = Find(b);
    if (ra == rb) return;
    // Smaller key becomes the representative.
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }
  bool Same(MentionKey a, MentionKey b) { return Find(a) == Find(b); }

 private:
  std::map<MentionKey, MentionKey> parent_;
};

}  // namespace

CoverageMismatch::CoverageMismatch(std::vector<std::string> keys)
    : Error(keys.empty() ? std::string("annotation sets share no items")
                         : "items missing from some coder: " + JoinKeys(keys)),
      keys_(std::move(keys)) {}

// --- CodingMatrix -----------------------------------------------------------

CodingMatrix::CodingMatrix(std::vector<std::string> items,
                           std::vector<std::string> categories,
                           std::vector<std::vector<std::int64_t>> counts)
    : items_(std::move(items)),
      categories_(std::move(categories)),
      counts_(std::move(counts)) {
  if (items_.empty()) throw InvalidMatrix("coding matrix has no items");
  if (categories_.size() < 2) {
    throw InvalidMatrix("coding matrix needs at least two categories");
  }
  std::unordered_set<std::string> seen;
  for (const auto &c : categories_) {
    if (!seen.insert(c).second) {
      throw InvalidMatrix("duplicate category '" + c + "'");
    }
  }
  if (counts_.size() != items_.size()) {
    throw InvalidMatrix("row count differs from item count");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto &row = counts_[i];
    if (row.size() != categories_.size()) {
      throw InvalidMatrix("row " + items_[i] + " has the wrong width");
    }
    std::int64_t sum = 0;
    for (auto n : row) {
      if (n < 0) throw InvalidMatrix("negative count in row " + items_[i]);
      sum += n;
    }
    if (i == 0) coders_ = sum;
    if (sum != coders_) {
      throw InvalidMatrix("row " + items_[i] + " sums to " +
                          std::to_string(sum) + ", expected " +
                          std::to_string(coders_));
    }
  }
  if (coders_ < 2) throw InvalidMatrix("coding matrix needs two coders");
}

std::int64_t CodingMatrix::column_total(std::size_t category) const {
  std::int64_t sum = 0;
  for (const auto &row : counts_) sum += row[category];
  return sum;
}

// --- Statistics -------------------------------------------------------------

KappaResult Kappa(const CodingMatrix &cm) {
  const auto n_items = static_cast<std::int64_t>(cm.num_items());
  const std::int64_t c = cm.coders();
  const std::int64_t pairs = c * (c - 1);

  KappaResult r;
  r.t = n_items * c;
  r.per_item_s.reserve(cm.num_items());
  std::int64_t total_agree = 0;
  for (const auto &row : cm.counts()) {
    std::int64_t agree = 0;
    for (auto n : row) agree += n * (n - 1);
    total_agree += agree;
    r.per_item_s.push_back(static_cast<double>(agree) /
                           static_cast<double>(pairs));
  }
  r.z = static_cast<double>(total_agree) / static_cast<double>(pairs);
  r.pa = r.z / static_cast<double>(n_items);

  std::int64_t square_sum = 0;
  for (std::size_t j = 0; j < cm.num_categories(); ++j) {
    const std::int64_t cj = cm.column_total(j);
    square_sum += cj * cj;
  }
  if (square_sum == r.t * r.t) throw DegenerateChance();
  const double t = static_cast<double>(r.t);
  r.pe = static_cast<double>(square_sum) / (t * t);
  r.k = (r.pa - r.pe) / (1.0 - r.pe);
  return r;
}

std::vector<PerClassRow> PerClassAgreement(const CodingMatrix &cm) {
  std::vector<PerClassRow> rows;
  for (std::size_t j = 0; j < cm.num_categories(); ++j) {
    PerClassRow row;
    row.category = cm.categories()[j];
    for (const auto &counts : cm.counts()) {
      row.total += counts[j];
      row.agreements += counts[j] * (counts[j] - 1);
    }
    row.comparisons = row.total * (cm.coders() - 1);
    if (row.comparisons > 0) {
      row.percentage = static_cast<double>(row.agreements) /
                       static_cast<double>(row.comparisons);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- Confusion --------------------------------------------------------------

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto &row : cells) {
    for (auto v : row) sum += v;
  }
  return sum;
}

std::vector<std::int64_t> ConfusionMatrix::row_totals() const {
  std::vector<std::int64_t> out;
  for (const auto &row : cells) {
    std::int64_t sum = 0;
    for (auto v : row) sum += v;
    out.push_back(sum);
  }
  return out;
}

std::vector<std::int64_t> ConfusionMatrix::column_totals() const {
  std::vector<std::int64_t> out(categories.size(), 0);
  for (const auto &row : cells) {
    for (std::size_t y = 0; y < row.size(); ++y) out[y] += row[y];
  }
  return out;
}

std::vector<std::string> CategoryUniverse(
    const std::vector<AnnotationSet> &sets) {
  std::vector<std::string> out;
  auto add = [&out](const std::string &c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto &set : sets) {
    for (const auto &c : set.categories()) add(c);
  }
  for (const auto &set : sets) {
    for (const auto &r : set.records()) add(r.label);
  }
  return out;
}

CodingMatrix BuildCodingMatrix(const std::vector<AnnotationSet> &sets) {
  if (sets.size() < 2) throw InvalidMatrix("agreement needs at least two coders");
  auto keys = CommonKeys(sets);
  if (keys.empty()) throw CoverageMismatch({});
  auto categories = CategoryUniverse(sets);

  std::vector<std::string> items;
  std::vector<std::vector<std::int64_t>> counts;
  for (const auto &key : keys) {
    items.push_back(key.str());
    std::vector<std::int64_t> row(categories.size(), 0);
    for (const auto &set : sets) {
      ++row[IndexOf(categories, set.Find(key)->label)];
    }
    counts.push_back(std::move(row));
  }
  return CodingMatrix(std::move(items), std::move(categories),
                      std::move(counts));
}

ConfusionMatrix MakeConfusionMatrix(const AnnotationSet &a,
                                    const AnnotationSet &b) {
  std::vector<AnnotationSet> pair = {a, b};
  auto keys = CommonKeys(pair);
  if (keys.empty()) throw CoverageMismatch({});
  ConfusionMatrix conf;
  conf.categories = CategoryUniverse(pair);
  conf.coder_a = a.coder_id();
  conf.coder_b = b.coder_id();
  const std::size_t m = conf.categories.size();
  conf.cells.assign(m, std::vector<std::int64_t>(m, 0));
  for (const auto &key : keys) {
    ++conf.cells[IndexOf(conf.categories, a.Find(key)->label)]
                [IndexOf(conf.categories, b.Find(key)->label)];
  }
  return conf;
}

CodingMatrix ConfusionToCoding(const ConfusionMatrix &conf) {
  const std::size_t m = conf.categories.size();
  std::vector<std::string> items;
  std::vector<std::vector<std::int64_t>> counts;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const std::int64_t n = conf.cells.at(x).at(y);
      if (n < 0) throw InvalidMatrix("negative confusion count");
      for (std::int64_t k = 0; k < n; ++k) {
        items.push_back(conf.categories[x] + "|" + conf.categories[y] + "#" +
                        std::to_string(k + 1));
        std::vector<std::int64_t> row(m, 0);
        ++row[x];
        ++row[y];
        counts.push_back(std::move(row));
      }
    }
  }
  return CodingMatrix(std::move(items), conf.categories, std::move(counts));
}

// --- Transformations --------------------------------------------------------

AnnotationSet RemapClasses(const AnnotationSet &set,
                           const std::map<std::string, std::string> &mapping) {
  auto target = [&mapping](const std::string &c) -> const std::string & {
    auto it = mapping.find(c);
    if (it == mapping.end()) throw UnmappedCategory(c);
    return it->second;
  };
  std::vector<std::string> universe;
  for (const auto &c : set.categories()) {
    const std::string &to = target(c);
    if (std::find(universe.begin(), universe.end(), to) == universe.end()) {
      universe.push_back(to);
    }
  }
  AnnotationSet out(set.coder_id(), set.doc_id(), set.scheme());
  out.set_categories(std::move(universe));
  for (const auto &r : set.records()) {
    AnnotationRecord copy = r;
    copy.label = target(r.label);
    out.Add(std::move(copy));
  }
  return out;
}

std::vector<AnnotationSet> DropItemsWithLabels(
    const std::vector<AnnotationSet> &sets, const std::set<std::string> &drop,
    DropMode mode) {
  auto keys = CommonKeys(sets);
  std::set<MentionKey> dropped;
  for (const auto &key : keys) {
    std::size_t hits = 0;
    for (const auto &set : sets) hits += drop.count(set.Find(key)->label);
    const bool gone =
        mode == DropMode::kAnyCoder ? hits > 0 : hits == sets.size();
    if (gone) dropped.insert(key);
  }
  std::vector<AnnotationSet> out;
  for (const auto &set : sets) {
    AnnotationSet kept(set.coder_id(), set.doc_id(), set.scheme());
    if (set.has_category_override()) kept.set_categories(set.categories());
    for (const auto &r : set.records()) {
      if (!dropped.count(r.key)) kept.Add(r);
    }
    out.push_back(std::move(kept));
  }
  return out;
}

EntityAgreement ComputeEntityAgreement(const std::vector<AnnotationSet> &sets,
                                       const std::string &link_class,
                                       ChainMode mode) {
  auto keys = CommonKeys(sets);
  for (const auto &set : sets) {
    for (const auto &r : set.records()) {
      if (r.label == link_class && !r.antecedent) {
        throw MissingLink(set.coder_id(), r.key);
      }
    }
  }

  // Closure over every link except those made on `skip` itself.
  auto link_into = [&link_class](const AnnotationSet &set, MentionKey skip,
                                 UnionFind &uf) {
    for (const auto &r : set.records()) {
      if (r.label == link_class && r.key != skip) uf.Union(r.key, *r.antecedent);
    }
  };

  EntityAgreement out;
  for (const auto &key : keys) {
    bool all_linked = true;
    std::vector<MentionKey> antecedents;
    for (const auto &set : sets) {
      const AnnotationRecord *r = set.Find(key);
      if (r->label != link_class) {
        all_linked = false;
        break;
      }
      antecedents.push_back(*r->antecedent);
    }
    if (!all_linked) continue;
    ++out.eligible;

    bool agree = true;
    if (mode == ChainMode::kUnion) {
      UnionFind shared;
      for (const auto &set : sets) link_into(set, key, shared);
      for (const auto &ant : antecedents) {
        agree = agree && shared.Same(ant, antecedents.front());
      }
    } else {
      std::vector<UnionFind> own(sets.size());
      for (std::size_t s = 0; s < sets.size(); ++s) link_into(sets[s], key, own[s]);
      for (std::size_t a = 0; a < sets.size() && agree; ++a) {
        for (std::size_t b = a + 1; b < sets.size() && agree; ++b) {
          agree = own[a].Same(antecedents[a], antecedents[b]) ||
                  own[b].Same(antecedents[a], antecedents[b]);
        }
      }
    }
    if (agree) ++out.entity_agree;
  }
  return out;
}

}  // namespace ddkit
