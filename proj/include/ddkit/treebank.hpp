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

// Reader for Penn-Treebank-style bracketed parse files.

#ifndef DDKIT_TREEBANK_HPP_
#define DDKIT_TREEBANK_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ddkit/common.hpp"

namespace ddkit {

// One constituent. Leaves are preterminals: `label` is the POS tag and
// `token` the surface word. Internal nodes have children and no token.
//
// `begin`/`end` is the half-open range of surface tokens covered by the node.
// Empty-category leaves (traces, null elements) cover an empty range; the
// ranges index the readable text.
struct ParseTree {
  std::string raw_label;  // label as written, e.g. "NP-SBJ-1"
  std::string label;      // bare category, e.g. "NP"
  std::string token;
  std::vector<ParseTree> children;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is_leaf() const { return children.empty(); }
  bool is_empty_category() const;

  // Surface tokens under this node, empty categories excluded.
  std::vector<std::string> SurfaceTokens() const;
  std::string Surface() const;

  // All leaves in order, including empty categories.
  std::vector<const ParseTree *> Leaves() const;
};

struct Document {
  std::string doc_id;
  std::string source_path;
  std::vector<ParseTree> sentences;  // sentence n is sentences[n - 1]
};

class ParseError : public Error {
 public:
  enum class Kind { kUnbalancedParens, kEmptyNode, kMalformed, kEncoding };

  ParseError(Kind kind, std::size_t line, std::size_t column,
             const std::string &detail, const std::string &source = "");

  Kind kind() const { return kind_; }
  const std::string &detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Strips functional tags and indices: "NP-SBJ-1" -> "NP", "PP=2" -> "PP".
// Labels starting with '-' ("-NONE-", "-LRB-") are returned unchanged.
std::string BareCategory(std::string_view raw_label);

// Parses every top-level bracketed expression in `raw_text`. An outer
// unlabeled wrapper "( (S ...) )" is removed. Throws ParseError.
Document ParseTreebank(std::string_view raw_text, std::string doc_id);

// Reads and parses a file; doc_id defaults to the file name stem.
Document ReadTreebankFile(const std::string &path, std::string doc_id = "");

// Single-line bracketed rendering using raw labels.
std::string ToBracketed(const ParseTree &tree);
// One sentence per line.
std::string ToBracketed(const Document &doc);

struct NpNode {
  MentionKey key;
  const ParseTree *node = nullptr;
  const ParseTree *sentence = nullptr;
};

// Every internal node whose category starts with "NP", in document order,
// depth-first with outer phrases before the phrases they contain. Pointers
// stay valid as long as `doc` is alive and unmodified.
std::vector<NpNode> NpNodes(const Document &doc);

// Path from `root` down to `target` (both inclusive), or empty when `target`
// is not inside `root`.
std::vector<const ParseTree *> PathTo(const ParseTree &root,
                                      const ParseTree *target);

}  // namespace ddkit

#endif  // DDKIT_TREEBANK_HPP_
