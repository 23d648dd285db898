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

// Definite description extraction and the surface features that the
// discourse-new heuristics look at.

#ifndef DDKIT_EXTRACTION_HPP_
#define DDKIT_EXTRACTION_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddkit/common.hpp"
#include "ddkit/treebank.hpp"

namespace ddkit {

// Word lists consulted by the feature rules. Entries are lower-case.
struct LexiconConfig {
  std::set<std::string> unexplanatory_modifiers;
  std::set<std::string> temporal_heads;
  std::set<std::string> complement_taking_nouns;
  std::set<std::string> copula_forms;

  static LexiconConfig Defaults();

  // Reads a JSON object with any of the four list-valued keys; missing keys
  // keep their defaults. Throws Error on malformed input.
  static LexiconConfig FromJson(std::string_view json_text);
  static LexiconConfig Load(const std::string &path);

  // Throws Error when a set is empty or holds a non-lower-case entry.
  void Validate() const;
};

struct FeatureSet {
  bool has_np_complement = false;
  bool has_relative_or_pp_postmod = false;
  bool in_apposition = false;
  bool in_copula = false;
  bool has_unexplanatory_modifier = false;
  bool has_temporal_head = false;
  bool has_proper_head_or_premod = false;

  bool operator==(const FeatureSet &) const = default;

  // Seven '0'/'1' characters in field order.
  std::string Bits() const;
};

struct TaggedToken {
  std::string text;
  std::string pos;

  bool operator==(const TaggedToken &) const = default;
};

struct DefiniteDescription {
  MentionKey key;
  std::string surface;
  std::string head;
  std::string head_pos;
  std::vector<TaggedToken> premodifiers;
  std::vector<std::string> postmodifiers;  // constituent categories
  FeatureSet features;
  std::size_t begin = 0;  // surface token range within the sentence
  std::size_t end = 0;
};

class HeadNotFound : public Error {
 public:
  explicit HeadNotFound(const std::string &what) : Error(what) {}
};

// Result of head finding on one NP.
struct NpHead {
  const ParseTree *leaf = nullptr;
  // The NP whose daughters hold the head. Differs from the input NP when the
  // input is a coordination or apposition shell.
  const ParseTree *head_np = nullptr;
  std::vector<TaggedToken> premodifiers;
  std::vector<std::string> postmodifiers;

  const std::string &token() const { return leaf->token; }
  const std::string &pos() const { return leaf->label; }
};

// Rightmost noun leaf before the first postmodifying daughter. Shells whose
// first daughter is an NP are entered at the first NP daughter that starts
// with a determiner. Throws HeadNotFound.
NpHead FindHead(const ParseTree &np);

// Feature rules for the NP `np` that `dd` was extracted from; `sentence` is
// the tree containing it.
FeatureSet ComputeFeatures(const DefiniteDescription &dd, const ParseTree &np,
                           const ParseTree &sentence,
                           const LexiconConfig &lex);

// First non-punctuation surface token is "the", case-insensitively.
bool StartsWithThe(const ParseTree &np);

struct SkippedItem {
  MentionKey key;
  std::string surface;
  std::string reason;
};

struct Extraction {
  std::vector<DefiniteDescription> definites;
  std::vector<SkippedItem> skipped;  // the-NPs without a noun head
};

Extraction ExtractDefinites(const Document &doc,
                            const LexiconConfig &lex = LexiconConfig::Defaults());

}  // namespace ddkit

#endif  // DDKIT_EXTRACTION_HPP_
