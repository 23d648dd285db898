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

#include "ddkit/treebank.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

namespace ddkit {

namespace {

const char *KindName(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kUnbalancedParens: return "unbalanced parentheses";
    case ParseError::Kind::kEmptyNode: return "empty node";
    case ParseError::Kind::kMalformed: return "malformed tree";
    case ParseError::Kind::kEncoding: return "invalid UTF-8";
  }
  return "parse error";
}

bool IsTraceToken(std::string_view token) {
  // "*", "*T*-1", "*U*", "*?*", "*PRO*" and friends.
  return !token.empty() && token.front() == '*';
}

struct Token {
  enum Type { kOpen, kClose, kAtom, kEnd } type;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' ||
                 ch == '\v') {
        ++column_;
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return {Token::kEnd, {}, line_, column_};
    Token tok{Token::kAtom, {}, line_, column_};
    char ch = text_[pos_];
    if (ch == '(' || ch == ')') {
      tok.type = ch == '(' ? Token::kOpen : Token::kClose;
      tok.text = text_.substr(pos_, 1);
      ++pos_;
      ++column_;
      return tok;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' ||
          c == '\r' || c == '\f' || c == '\v') {
        break;
      }
      ++pos_;
      ++column_;
    }
    tok.text = text_.substr(start, pos_ - start);
    return tok;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { Advance(); }

  bool AtEnd() const { return current_.type == Token::kEnd; }

  ParseTree ParseSentence() {
    if (current_.type != Token::kOpen) {
      Fail(ParseError::Kind::kMalformed, current_,
           current_.type == Token::kClose ? "unexpected ')'"
                                          : "text outside brackets");
    }
    ParseTree tree = ParseNode(/*top_level=*/true);
    // Old ACL/DCI files wrap each sentence in an extra unlabeled pair.
    while (tree.raw_label.empty() && tree.children.size() == 1) {
      ParseTree inner = std::move(tree.children.front());
      tree = std::move(inner);
    }
    if (tree.raw_label.empty()) {
      Fail(ParseError::Kind::kMalformed, open_of_root_,
           "unlabeled node with several children");
    }
    return tree;
  }

 private:
  [[noreturn]] void Fail(ParseError::Kind kind, const Token &at,
                         const std::string &detail) {
    throw ParseError(kind, at.line, at.column, detail);
  }

  void Advance() {
    current_ = lexer_.Next();
    if (current_.type == Token::kClose && depth_ == 0) {
      Fail(ParseError::Kind::kUnbalancedParens, current_,
           "')' without matching '('");
    }
  }

  ParseTree ParseNode(bool top_level) {
    Token open = current_;
    if (top_level) open_of_root_ = open;
    ++depth_;
    Advance();

    ParseTree node;
    if (current_.type == Token::kAtom) {
      node.raw_label = std::string(current_.text);
      node.label = BareCategory(node.raw_label);
      Advance();
    }

    std::vector<Token> atoms;
    while (current_.type != Token::kClose) {
      if (current_.type == Token::kEnd) {
        Fail(ParseError::Kind::kUnbalancedParens, open,
             "'(' is never closed");
      }
      if (current_.type == Token::kOpen) {
        if (!atoms.empty()) {
          Fail(ParseError::Kind::kMalformed, atoms.front(),
               "token mixed with constituents");
        }
        node.children.push_back(ParseNode(false));
      } else {
        if (!node.children.empty() || !atoms.empty()) {
          Fail(ParseError::Kind::kMalformed, current_,
               "unexpected token '" + std::string(current_.text) + "'");
        }
        atoms.push_back(current_);
        Advance();
      }
    }
    --depth_;
    Advance();  // consume ')'

    if (node.raw_label.empty() && node.children.empty() && atoms.empty()) {
      Fail(ParseError::Kind::kEmptyNode, open, "'()' with no label");
    }
    if (!atoms.empty()) {
      if (node.raw_label.empty()) {
        Fail(ParseError::Kind::kEmptyNode, open, "leaf without a label");
      }
      node.token = std::string(atoms.front().text);
    } else if (node.children.empty()) {
      Fail(ParseError::Kind::kEmptyNode, open,
           "node '" + node.raw_label + "' has no content");
    } else if (node.raw_label.empty() && !top_level) {
      Fail(ParseError::Kind::kMalformed, open, "unlabeled inner node");
    }
    return node;
  }

  Lexer lexer_;
  Token current_{Token::kEnd, {}, 1, 1};
  Token open_of_root_{Token::kEnd, {}, 1, 1};
  int depth_ = 0;
};

void AssignOffsets(ParseTree &node, std::size_t &next) {
  node.begin = next;
  if (node.is_leaf()) {
    if (!node.is_empty_category()) ++next;
  } else {
    for (auto &child : node.children) AssignOffsets(child, next);
  }
  node.end = next;
}

void CollectLeaves(const ParseTree &node, std::vector<const ParseTree *> &out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const auto &child : node.children) CollectLeaves(child, out);
}

void WriteBracketed(const ParseTree &node, std::string &out) {
  out += '(';
  out += node.raw_label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.token;
  } else {
    for (const auto &child : node.children) {
      out += ' ';
      WriteBracketed(child, out);
    }
  }
  out += ')';
}

void CollectNps(const ParseTree &node, const ParseTree &sentence,
                int sentence_no, int &counter, std::vector<NpNode> &out) {
  if (node.is_leaf()) return;
  if (node.label.rfind("NP", 0) == 0) {
    out.push_back({MentionKey{sentence_no, ++counter}, &node, &sentence});
  }
  for (const auto &child : node.children) {
    CollectNps(child, sentence, sentence_no, counter, out);
  }
}

bool FindPath(const ParseTree &node, const ParseTree *target,
              std::vector<const ParseTree *> &path) {
  path.push_back(&node);
  if (&node == target) return true;
  for (const auto &child : node.children) {
    if (FindPath(child, target, path)) return true;
  }
  path.pop_back();
  return false;
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column,
                       const std::string &detail, const std::string &source)
    : Error((source.empty() ? std::string() : source + ":") +
            std::to_string(line) + ":" + std::to_string(column) + ": " +
            KindName(kind) + ": " + detail),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(detail) {}

bool ParseTree::is_empty_category() const {
  return is_leaf() && (label == "-NONE-" || IsTraceToken(token));
}

std::vector<const ParseTree *> ParseTree::Leaves() const {
  std::vector<const ParseTree *> out;
  CollectLeaves(*this, out);
  return out;
}

std::vector<std::string> ParseTree::SurfaceTokens() const {
  std::vector<std::string> out;
  for (const ParseTree *leaf : Leaves()) {
    if (!leaf->is_empty_category()) out.push_back(leaf->token);
  }
  return out;
}

std::string ParseTree::Surface() const {
  std::string out;
  for (const auto &tok : SurfaceTokens()) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

std::string BareCategory(std::string_view raw_label) {
  if (raw_label.empty() || raw_label.front() == '-') {
    return std::string(raw_label);
  }
  auto cut = raw_label.find_first_of("-=");
  return std::string(raw_label.substr(0, cut));
}

Document ParseTreebank(std::string_view raw_text, std::string doc_id) {
  if (!IsValidUtf8(raw_text)) {
    throw ParseError(ParseError::Kind::kEncoding, 0, 0,
                     "input is not valid UTF-8");
  }
  Document doc;
  doc.doc_id = std::move(doc_id);
  Parser parser(raw_text);
  while (!parser.AtEnd()) {
    ParseTree tree = parser.ParseSentence();
    std::size_t next = 0;
    AssignOffsets(tree, next);
    doc.sentences.push_back(std::move(tree));
  }
  return doc;
}

Document ReadTreebankFile(const std::string &path, std::string doc_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (doc_id.empty()) doc_id = std::filesystem::path(path).stem().string();
  try {
    Document doc = ParseTreebank(buffer.str(), std::move(doc_id));
    doc.source_path = path;
    return doc;
  } catch (const ParseError &e) {
    throw ParseError(e.kind(), e.line(), e.column(), e.detail(), path);
  }
}

std::string ToBracketed(const ParseTree &tree) {
  std::string out;
  WriteBracketed(tree, out);
  return out;
}

std::string ToBracketed(const Document &doc) {
  std::string out;
  for (const auto &sentence : doc.sentences) {
    WriteBracketed(sentence, out);
    out += '\n';
  }
  return out;
}

std::vector<NpNode> NpNodes(const Document &doc) {
  std::vector<NpNode> out;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    int counter = 0;
    CollectNps(doc.sentences[s], doc.sentences[s], static_cast<int>(s + 1),
               counter, out);
  }
  return out;
}

std::vector<const ParseTree *> PathTo(const ParseTree &root,
                                      const ParseTree *target) {
  std::vector<const ParseTree *> path;
  if (!FindPath(root, target, path)) path.clear();
  return path;
}

}  // namespace ddkit
