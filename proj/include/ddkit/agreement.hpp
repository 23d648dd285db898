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

// Agreement statistics over annotation sets: multi-rater Kappa (Siegel &
// Castellan), per-class pairwise agreement, confusion matrices, class
// merging, item dropping and antecedent (entity) agreement.

#ifndef DDKIT_AGREEMENT_HPP_
#define DDKIT_AGREEMENT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddkit/annotation.hpp"
#include "ddkit/common.hpp"

namespace ddkit {

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class CoverageMismatch : public Error {
 public:
  explicit CoverageMismatch(std::vector<std::string> keys);
  // "coder:key" for every item some coder lacks.
  const std::vector<std::string> &keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

class DegenerateChance : public Error {
 public:
  DegenerateChance()
      : Error("all judgments fall in one category; K is undefined") {}
};

class UnmappedCategory : public Error {
 public:
  explicit UnmappedCategory(const std::string &name)
      : Error("category '" + name + "' has no mapping"), name_(name) {}
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

class MissingLink : public Error {
 public:
  MissingLink(const std::string &coder, MentionKey key)
      : Error("coder " + coder + " gives no antecedent for " + key.str()),
        coder_(coder),
        key_(key) {}
  const std::string &coder() const { return coder_; }
  MentionKey key() const { return key_; }

 private:
  std::string coder_;
  MentionKey key_;
};

// N items by m categories; cell (i, j) counts the coders that put item i in
// category j. Every row sums to the number of coders c.
class CodingMatrix {
 public:
  // Throws InvalidMatrix unless N >= 1, m >= 2, categories are unique, counts
  // are non-negative and all rows sum to the same c >= 2.
  CodingMatrix(std::vector<std::string> items,
               std::vector<std::string> categories,
               std::vector<std::vector<std::int64_t>> counts);

  const std::vector<std::string> &items() const { return items_; }
  const std::vector<std::string> &categories() const { return categories_; }
  const std::vector<std::vector<std::int64_t>> &counts() const {
    return counts_;
  }
  std::int64_t count(std::size_t item, std::size_t category) const {
    return counts_[item][category];
  }
  std::size_t num_items() const { return items_.size(); }
  std::size_t num_categories() const { return categories_.size(); }
  std::int64_t coders() const { return coders_; }
  std::int64_t column_total(std::size_t category) const;

 private:
  std::vector<std::string> items_;
  std::vector<std::string> categories_;
  std::vector<std::vector<std::int64_t>> counts_;
  std::int64_t coders_ = 0;
};

struct KappaResult {
  std::vector<double> per_item_s;
  double pa = 0;
  double pe = 0;
  double k = 0;
  std::int64_t t = 0;  // total judgments, N * c
  double z = 0;        // sum of per-item agreement
};

// S_i = sum_j n_ij (n_ij - 1) / (c (c - 1)); PA = Z / N;
// PE = sum_j (C_j / (N c))^2; K = (PA - PE) / (1 - PE).
// Sums are taken over integers before dividing, so results do not depend on
// item or category order. Throws DegenerateChance when PE = 1.
KappaResult Kappa(const CodingMatrix &cm);

struct PerClassRow {
  std::string category;
  std::int64_t total = 0;
  std::int64_t comparisons = 0;  // total * (c - 1)
  std::int64_t agreements = 0;   // sum_i n_ij (n_ij - 1)
  std::optional<double> percentage;  // absent when comparisons == 0

  std::int64_t disagreements() const { return comparisons - agreements; }
};

std::vector<PerClassRow> PerClassAgreement(const CodingMatrix &cm);

// cell(x, y) = items coder A labeled x and coder B labeled y.
struct ConfusionMatrix {
  std::vector<std::string> categories;
  std::vector<std::vector<std::int64_t>> cells;
  std::string coder_a;
  std::string coder_b;

  std::int64_t total() const;
  std::vector<std::int64_t> row_totals() const;     // A's class totals
  std::vector<std::int64_t> column_totals() const;  // B's class totals
};

// Category universe shared by the set-based builders: declared categories of
// each set, then labels seen in records, in first-seen order.
std::vector<std::string> CategoryUniverse(const std::vector<AnnotationSet> &sets);

// Items are the record keys in document order. Throws CoverageMismatch when
// the sets disagree on keys or share none, InvalidMatrix for fewer than two
// sets.
CodingMatrix BuildCodingMatrix(const std::vector<AnnotationSet> &sets);

ConfusionMatrix MakeConfusionMatrix(const AnnotationSet &a,
                                    const AnnotationSet &b);

// One two-coder item per confusion count.
CodingMatrix ConfusionToCoding(const ConfusionMatrix &conf);

// Relabels every record. The mapping must cover all of the set's categories
// and labels (UnmappedCategory otherwise). The result's category universe is
// the image of the old one.
AnnotationSet RemapClasses(const AnnotationSet &set,
                           const std::map<std::string, std::string> &mapping);

enum class DropMode {
  kAnyCoder,  // drop an item when any coder used a dropped label
  kAllCoders, // drop only when every coder did
};

std::vector<AnnotationSet> DropItemsWithLabels(
    const std::vector<AnnotationSet> &sets, const std::set<std::string> &drop,
    DropMode mode = DropMode::kAnyCoder);

enum class ChainMode {
  kUnion,     // one closure over every coder's links
  kPerCoder,  // each pair of coders compared in their own closures
};

struct EntityAgreement {
  std::int64_t eligible = 0;
  std::int64_t entity_agree = 0;
};

// Among items all coders put in `link_class`, counts those whose antecedents
// belong to one entity. Throws MissingLink.
EntityAgreement ComputeEntityAgreement(const std::vector<AnnotationSet> &sets,
                                       const std::string &link_class,
                                       ChainMode mode = ChainMode::kUnion);

}  // namespace ddkit

#endif  // DDKIT_AGREEMENT_HPP_
