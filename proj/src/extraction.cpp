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

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ddkit {

namespace {

bool IsNp(const ParseTree &node) {
  return !node.is_leaf() && node.label.rfind("NP", 0) == 0;
}

bool IsNounTag(std::string_view pos) { return pos.rfind("NN", 0) == 0; }

bool IsDeterminerTag(std::string_view pos) {
  return pos == "DT" || pos == "PDT";
}

// Daughter categories that end the premodifier zone of an NP.
bool IsPostmodifier(const ParseTree &daughter) {
  if (daughter.is_leaf()) return false;
  const std::string &c = daughter.label;
  return c == "PP" || c == "SBAR" || c == "VP" || c == "RRC" || c == "S" ||
         IsNp(daughter);
}

bool IsPunctuationLeaf(const ParseTree &leaf) {
  return leaf.is_leaf() && IsPunctuation(leaf.token);
}

const ParseTree *FirstSurfaceLeaf(const ParseTree &node) {
  for (const ParseTree *leaf : node.Leaves()) {
    if (!leaf->is_empty_category()) return leaf;
  }
  return nullptr;
}

bool StartsWithDeterminer(const ParseTree &np) {
  const ParseTree *first = FirstSurfaceLeaf(np);
  return first != nullptr && IsDeterminerTag(first->label);
}

const ParseTree *RightmostNounLeaf(const ParseTree &node) {
  auto leaves = node.Leaves();
  for (auto it = leaves.rbegin(); it != leaves.rend(); ++it) {
    if (!(*it)->is_empty_category() && IsNounTag((*it)->label)) return *it;
  }
  return nullptr;
}

// Categories of the daughters of `node` from position `from` on, skipping
// punctuation and empty categories.
void AppendTrailingCategories(const ParseTree &node, std::size_t from,
                              std::vector<std::string> &out) {
  for (std::size_t i = from; i < node.children.size(); ++i) {
    const ParseTree &d = node.children[i];
    if (d.is_leaf() && (d.is_empty_category() || IsPunctuation(d.token))) {
      continue;
    }
    out.push_back(d.label);
  }
}

std::set<std::string> ReadWordList(const nlohmann::json &value,
                                   const char *name) {
  if (!value.is_array()) {
    throw Error(std::string("lexicon: '") + name + "' must be a list");
  }
  std::set<std::string> out;
  for (const auto &entry : value) {
    if (!entry.is_string()) {
      throw Error(std::string("lexicon: '") + name + "' holds a non-string");
    }
    out.insert(entry.get<std::string>());
  }
  return out;
}

}  // namespace

LexiconConfig LexiconConfig::Defaults() {
  LexiconConfig lex;
  lex.unexplanatory_modifiers = {"first",   "last",    "same",   "only",
                                 "best",    "fastest", "biggest", "largest",
                                 "maximum", "minimum", "most"};
  lex.temporal_heads = {"year",      "month",  "quarter", "week",
                        "day",       "time",   "period",  "morning",
                        "afternoon", "moment", "decade"};
  lex.complement_taking_nouns = {"fact",  "conclusion", "rumour", "rumor",
                                 "idea",  "belief",     "claim",  "time",
                                 "report", "possibility"};
  lex.copula_forms = {"is", "are", "was", "were", "be", "been", "being", "'s"};
  return lex;
}

LexiconConfig LexiconConfig::FromJson(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object()) throw Error("lexicon: top level must be an object");
  LexiconConfig lex = Defaults();
  for (const auto &[name, value] : doc.items()) {
    if (name == "unexplanatory_modifiers") {
      lex.unexplanatory_modifiers = ReadWordList(value, "unexplanatory_modifiers");
    } else if (name == "temporal_heads") {
      lex.temporal_heads = ReadWordList(value, "temporal_heads");
    } else if (name == "complement_taking_nouns") {
      lex.complement_taking_nouns = ReadWordList(value, "complement_taking_nouns");
    } else if (name == "copula_forms") {
      lex.copula_forms = ReadWordList(value, "copula_forms");
    } else {
      throw Error("lexicon: unknown key '" + name + "'");
    }
  }
  lex.Validate();
  return lex;
}

LexiconConfig LexiconConfig::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

void LexiconConfig::Validate() const {
  auto check = [](const std::set<std::string> &words, const char *name) {
    if (words.empty()) {
      throw Error(std::string("lexicon: '") + name + "' is empty");
    }
    for (const auto &w : words) {
      if (w.empty() || w != ToLower(w)) {
        throw Error(std::string("lexicon: '") + name + "' entry '" + w +
                    "' is not lower-case");
      }
    }
  };
  check(unexplanatory_modifiers, "unexplanatory_modifiers");
  check(temporal_heads, "temporal_heads");
  check(complement_taking_nouns, "complement_taking_nouns");
  check(copula_forms, "copula_forms");
}

std::string FeatureSet::Bits() const {
  std::string out;
  for (bool b : {has_np_complement, has_relative_or_pp_postmod, in_apposition,
                 in_copula, has_unexplanatory_modifier, has_temporal_head,
                 has_proper_head_or_premod}) {
    out += b ? '1' : '0';
  }
  return out;
}

NpHead FindHead(const ParseTree &np) {
  NpHead result;
  const ParseTree *node = &np;
  std::vector<std::string> outer_postmods;
  while (!node->children.empty() && IsNp(node->children.front())) {
    std::size_t chosen = 0;
    bool found = false;
    for (std::size_t i = 0; i < node->children.size() && !found; ++i) {
      const ParseTree &d = node->children[i];
      if (IsNp(d) && StartsWithDeterminer(d)) {
        chosen = i;
        found = true;
      }
    }
    // Material after the chosen daughter modifies it from outside; inner
    // shells come first in the final list.
    std::vector<std::string> trailing;
    AppendTrailingCategories(*node, chosen + 1, trailing);
    outer_postmods.insert(outer_postmods.begin(), trailing.begin(),
                          trailing.end());
    node = &node->children[chosen];
  }

  std::size_t boundary = node->children.size();
  for (std::size_t i = 0; i < node->children.size(); ++i) {
    if (IsPostmodifier(node->children[i])) {
      boundary = i;
      break;
    }
  }

  const ParseTree *head = nullptr;
  std::size_t head_daughter = 0;
  for (std::size_t i = boundary; i-- > 0;) {
    const ParseTree &d = node->children[i];
    if (d.is_leaf() && !d.is_empty_category() && IsNounTag(d.label)) {
      head = &d;
      head_daughter = i;
      break;
    }
  }
  if (head == nullptr) {
    // Noun buried in a nominal sub-constituent (NX, NML, QP, ...).
    for (std::size_t i = boundary; i-- > 0 && head == nullptr;) {
      const ParseTree &d = node->children[i];
      if (!d.is_leaf()) {
        head = RightmostNounLeaf(d);
        head_daughter = i;
      }
    }
  }
  if (head == nullptr) {
    throw HeadNotFound("no noun head in '" + np.Surface() + "'");
  }

  result.leaf = head;
  result.head_np = node;
  for (const ParseTree *leaf : node->Leaves()) {
    if (leaf == head) break;
    if (leaf->is_empty_category() || IsPunctuationLeaf(*leaf) ||
        IsDeterminerTag(leaf->label)) {
      continue;
    }
    result.premodifiers.push_back({leaf->token, leaf->label});
  }
  AppendTrailingCategories(*node, head_daughter + 1, result.postmodifiers);
  result.postmodifiers.insert(result.postmodifiers.end(),
                              outer_postmods.begin(), outer_postmods.end());
  return result;
}

bool StartsWithThe(const ParseTree &np) {
  for (const ParseTree *leaf : np.Leaves()) {
    if (leaf->is_empty_category() || IsPunctuation(leaf->token)) continue;
    return ToLower(leaf->token) == "the";
  }
  return false;
}

FeatureSet ComputeFeatures(const DefiniteDescription &dd, const ParseTree &np,
                           const ParseTree &sentence,
                           const LexiconConfig &lex) {
  FeatureSet f;
  const std::string head = ToLower(dd.head);

  bool has_sbar = false;
  for (const auto &cat : dd.postmodifiers) {
    if (cat == "SBAR") has_sbar = true;
    if (cat == "PP" || cat == "SBAR" || cat == "VP" || cat == "RRC" ||
        cat == "S") {
      f.has_relative_or_pp_postmod = true;
    }
  }
  f.has_np_complement = has_sbar && lex.complement_taking_nouns.count(head) > 0;

  for (const auto &mod : dd.premodifiers) {
    if (lex.unexplanatory_modifiers.count(ToLower(mod.text))) {
      f.has_unexplanatory_modifier = true;
    }
    if (mod.pos.rfind("NNP", 0) == 0) f.has_proper_head_or_premod = true;
  }
  if (dd.head_pos.rfind("NNP", 0) == 0) f.has_proper_head_or_premod = true;
  f.has_temporal_head = lex.temporal_heads.count(head) > 0;
  if (!f.has_temporal_head && dd.head_pos == "NNS" && head.size() > 1 &&
      head.back() == 's') {
    f.has_temporal_head = lex.temporal_heads.count(head.substr(0, head.size() - 1)) > 0;
  }

  auto path = PathTo(sentence, &np);
  if (path.size() >= 2) {
    const ParseTree &parent = *path[path.size() - 2];
    std::size_t self = 0;
    while (self < parent.children.size() && &parent.children[self] != &np) {
      ++self;
    }

    if (IsNp(parent)) {
      // A sibling NP on the far side of a comma, in either direction.
      bool comma_seen = false;
      for (std::size_t i = self + 1; i < parent.children.size(); ++i) {
        const ParseTree &d = parent.children[i];
        if (d.is_leaf() && d.token == ",") comma_seen = true;
        if (comma_seen && IsNp(d)) f.in_apposition = true;
      }
      comma_seen = false;
      for (std::size_t i = self; i-- > 0;) {
        const ParseTree &d = parent.children[i];
        if (d.is_leaf() && d.token == ",") comma_seen = true;
        if (comma_seen && IsNp(d)) f.in_apposition = true;
      }
    }

    if (parent.label == "VP") {
      const ParseTree *verb = nullptr;
      const ParseTree *first_np = nullptr;
      for (const auto &d : parent.children) {
        if (verb == nullptr && d.is_leaf() && d.label.rfind("VB", 0) == 0) {
          verb = &d;
        }
        if (first_np == nullptr && IsNp(d)) first_np = &d;
      }
      f.in_copula = verb != nullptr && first_np == &np &&
                    lex.copula_forms.count(ToLower(verb->token)) > 0;
    }
  }
  return f;
}

Extraction ExtractDefinites(const Document &doc, const LexiconConfig &lex) {
  Extraction out;
  for (const NpNode &np : NpNodes(doc)) {
    if (!StartsWithThe(*np.node)) continue;
    NpHead head;
    try {
      head = FindHead(*np.node);
    } catch (const HeadNotFound &e) {
      out.skipped.push_back({np.key, np.node->Surface(),
                             "HeadNotFound(" + np.key.str() + "): " +
                                 e.what()});
      continue;
    }
    DefiniteDescription dd;
    dd.key = np.key;
    dd.surface = np.node->Surface();
    dd.head = head.token();
    dd.head_pos = head.pos();
    dd.premodifiers = std::move(head.premodifiers);
    dd.postmodifiers = std::move(head.postmodifiers);
    dd.begin = np.node->begin;
    dd.end = np.node->end;
    dd.features = ComputeFeatures(dd, *np.node, *np.sentence, lex);
    out.definites.push_back(std::move(dd));
  }
  return out;
}

}  // namespace ddkit
