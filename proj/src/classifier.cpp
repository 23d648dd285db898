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

#include "ddkit/classifier.hpp"

#include <unordered_map>

namespace ddkit {

namespace {

bool Precedes(const Mention &m, const DefiniteDescription &dd) {
  if (m.key.sentence != dd.key.sentence) {
    return m.key.sentence < dd.key.sentence;
  }
  return m.end <= dd.begin && m.begin < m.end;
}

bool PremodifiersCompatible(const DefiniteDescription &dd,
                            const Mention &antecedent) {
  const std::string ant_head = ToLower(antecedent.head);
  for (const auto &mod : dd.premodifiers) {
    std::string word = ToLower(mod.text);
    if (word != ant_head && antecedent.premodifiers.count(word) == 0) {
      return false;
    }
  }
  return true;
}

Mention MakeMention(const NpNode &np, const NpHead &head) {
  Mention m;
  m.key = np.key;
  m.head = head.token();
  for (const auto &mod : head.premodifiers) {
    m.premodifiers.insert(ToLower(mod.text));
  }
  m.surface = np.node->Surface();
  m.is_definite = StartsWithThe(*np.node);
  m.begin = np.node->begin;
  m.end = np.node->end;
  return m;
}

}  // namespace

const char *LabelName(LabelKind kind) {
  switch (kind) {
    case LabelKind::kAnaphoricSameHead: return "ANAPHORIC_SAME_HEAD";
    case LabelKind::kLargerSituation: return "LARGER_SITUATION";
    case LabelKind::kUnfamiliar: return "UNFAMILIAR";
    case LabelKind::kUnclassified: return "UNCLASSIFIED";
  }
  return "UNCLASSIFIED";
}

std::optional<MentionKey> ResolveSameHead(const DefiniteDescription &dd,
                                          const DiscourseModel &model,
                                          Matching matching) {
  const std::string head = ToLower(dd.head);
  const auto &mentions = model.mentions();
  for (auto it = mentions.rbegin(); it != mentions.rend(); ++it) {
    if (!Precedes(*it, dd)) continue;
    if (ToLower(it->head) != head) continue;
    if (matching == Matching::kStrict && !PremodifiersCompatible(dd, *it)) {
      continue;
    }
    return it->key;
  }
  return std::nullopt;
}

LabelKind ClassifyDiscourseNew(const DefiniteDescription &dd) {
  const FeatureSet &f = dd.features;
  if (f.has_unexplanatory_modifier || f.in_apposition || f.in_copula ||
      f.has_relative_or_pp_postmod || f.has_np_complement) {
    return LabelKind::kUnfamiliar;
  }
  if (f.has_temporal_head || f.has_proper_head_or_premod) {
    return LabelKind::kLargerSituation;
  }
  return LabelKind::kUnclassified;
}

std::vector<Mention> CollectMentions(const Document &doc) {
  std::vector<Mention> out;
  for (const NpNode &np : NpNodes(doc)) {
    try {
      out.push_back(MakeMention(np, FindHead(*np.node)));
    } catch (const HeadNotFound &) {
      // Pronouns and other head-less NPs never serve as antecedents.
    }
  }
  return out;
}

HeadIndex MakeHeadIndex(const std::vector<Mention> &mentions) {
  HeadIndex index;
  for (const auto &m : mentions) index[m.key] = m.head;
  return index;
}

Classification ClassifyDocument(const Document &doc,
                                const ClassifierConfig &cfg) {
  Extraction extraction = ExtractDefinites(doc, cfg.lexicon);
  std::unordered_map<MentionKey, const DefiniteDescription *, MentionKeyHash>
      definites;
  for (const auto &dd : extraction.definites) definites[dd.key] = &dd;
  std::unordered_map<MentionKey, const SkippedItem *, MentionKeyHash> skipped;
  for (const auto &item : extraction.skipped) skipped[item.key] = &item;

  Classification out;
  DiscourseModel model;
  for (const NpNode &np : NpNodes(doc)) {
    if (auto it = definites.find(np.key); it != definites.end()) {
      const DefiniteDescription &dd = *it->second;
      SystemLabel label;
      auto resolve = [&]() -> bool {
        if (auto ant = ResolveSameHead(dd, model, cfg.matching)) {
          label = SystemLabel::Anaphoric(*ant);
          return true;
        }
        return false;
      };
      auto classify = [&]() -> bool {
        LabelKind kind = ClassifyDiscourseNew(dd);
        label = SystemLabel::Of(kind);
        return kind != LabelKind::kUnclassified;
      };
      if (cfg.order == Order::kResolveFirst) {
        if (!resolve()) classify();
      } else {
        if (!classify()) {
          if (!resolve()) label = SystemLabel::Of(LabelKind::kUnclassified);
        }
      }
      out.labels[dd.key] = label;
    } else if (auto sk = skipped.find(np.key); sk != skipped.end()) {
      out.labels[np.key] = SystemLabel::Of(LabelKind::kUnclassified);
      out.diagnostics.push_back(doc.doc_id + ": " + sk->second->reason);
    }

    try {
      model.Add(MakeMention(np, FindHead(*np.node)));
    } catch (const HeadNotFound &) {
    }
  }
  return out;
}

}  // namespace ddkit
