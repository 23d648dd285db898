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

// Heuristic definite description classifier. A left-to-right pass keeps a
// discourse model of every noun phrase seen so far; each definite is either
// resolved to a same-head antecedent in that model or classified as
// discourse-new from its surface features.

#ifndef DDKIT_CLASSIFIER_HPP_
#define DDKIT_CLASSIFIER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddkit/annotation.hpp"
#include "ddkit/common.hpp"
#include "ddkit/extraction.hpp"
#include "ddkit/treebank.hpp"

namespace ddkit {

struct Mention {
  MentionKey key;
  std::string head;
  std::set<std::string> premodifiers;  // lower-cased
  std::string surface;
  bool is_definite = false;
  std::size_t begin = 0;  // surface token range within the sentence
  std::size_t end = 0;
};

// Append-only record of mentions in textual order.
class DiscourseModel {
 public:
  void Add(Mention mention) { mentions_.push_back(std::move(mention)); }
  const std::vector<Mention> &mentions() const { return mentions_; }
  bool empty() const { return mentions_.empty(); }

 private:
  std::vector<Mention> mentions_;
};

enum class LabelKind {
  kAnaphoricSameHead,
  kLargerSituation,
  kUnfamiliar,
  kUnclassified,
};

struct SystemLabel {
  LabelKind kind = LabelKind::kUnclassified;
  std::optional<MentionKey> antecedent;  // set iff kAnaphoricSameHead

  bool operator==(const SystemLabel &) const = default;

  static SystemLabel Anaphoric(MentionKey antecedent) {
    return {LabelKind::kAnaphoricSameHead, antecedent};
  }
  static SystemLabel Of(LabelKind kind) { return {kind, std::nullopt}; }
};

const char *LabelName(LabelKind kind);

enum class Order { kResolveFirst, kClassifyFirst };
enum class Matching { kStrict, kLoose };

struct ClassifierConfig {
  Order order = Order::kResolveFirst;
  Matching matching = Matching::kStrict;
  LexiconConfig lexicon = LexiconConfig::Defaults();
};

// Most recent mention that precedes `dd` (ends before it starts, or lies in
// an earlier sentence) with the same head, case-insensitively. Under kStrict
// every premodifier of `dd` must also occur among the antecedent's
// premodifiers or equal its head.
std::optional<MentionKey> ResolveSameHead(const DefiniteDescription &dd,
                                          const DiscourseModel &model,
                                          Matching matching);

// kUnfamiliar, kLargerSituation or kUnclassified; the unfamiliar tests run
// first.
LabelKind ClassifyDiscourseNew(const DefiniteDescription &dd);

// Every NP of the document with a noun head, as the model sees it.
std::vector<Mention> CollectMentions(const Document &doc);

// Heads of all mentions, for scheme conversion of annotations whose
// antecedents are indefinite NPs.
HeadIndex MakeHeadIndex(const std::vector<Mention> &mentions);

struct Classification {
  std::map<MentionKey, SystemLabel> labels;
  std::vector<std::string> diagnostics;
};

Classification ClassifyDocument(const Document &doc,
                                const ClassifierConfig &cfg = {});

}  // namespace ddkit

#endif  // DDKIT_CLASSIFIER_HPP_
