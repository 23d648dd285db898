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

// Annotation schemes, the four-question decision script, annotation sets and
// the .ddann file format.
//
// A .ddann file is UTF-8 with LF line endings:
//
//   ddann 1 EXP2
//   coder alice
//   doc w0766
//   1/1<TAB>the price<TAB>BRIDGE<TAB>1/3<TAB>-
//
// Record fields are key, surface, label, antecedent key (or "-") and comment
// (or "-"). Lines starting with '#' are ignored.

#ifndef DDKIT_ANNOTATION_HPP_
#define DDKIT_ANNOTATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddkit/common.hpp"
#include "ddkit/extraction.hpp"

namespace ddkit {

enum class SchemeId { kExp1, kExp2 };

struct AnnotationScheme {
  SchemeId id;
  std::string name;
  std::vector<std::string> categories;
  std::set<std::string> link_classes;
  // Guidance for coders when several classes apply; not enforced.
  std::vector<std::string> preference_ranking;
  bool doubt_allowed = true;

  bool HasCategory(std::string_view label) const;
  bool IsLinkClass(std::string_view label) const {
    return link_classes.count(std::string(label)) > 0;
  }

  static const AnnotationScheme &Get(SchemeId id);
  // "EXP1" / "EXP2"; case-insensitive.
  static std::optional<SchemeId> ParseId(std::string_view name);
};

struct AnnotationRecord {
  MentionKey key;
  std::string surface;
  std::string label;
  std::optional<MentionKey> antecedent;
  std::optional<std::string> comment;

  bool operator==(const AnnotationRecord &) const = default;
};

class DuplicateKey : public Error {
 public:
  DuplicateKey(MentionKey key, std::size_t line);
  MentionKey key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  MentionKey key_;
  std::size_t line_;
};

// One coder's labels over one document. Records keep insertion order; keys
// are unique.
class AnnotationSet {
 public:
  AnnotationSet() = default;
  AnnotationSet(std::string coder_id, std::string doc_id, SchemeId scheme)
      : coder_id_(std::move(coder_id)),
        doc_id_(std::move(doc_id)),
        scheme_(scheme) {}

  const std::string &coder_id() const { return coder_id_; }
  const std::string &doc_id() const { return doc_id_; }
  SchemeId scheme() const { return scheme_; }
  void set_coder_id(std::string id) { coder_id_ = std::move(id); }

  // Category universe: the scheme's categories unless overridden (as after
  // a class merge).
  const std::vector<std::string> &categories() const;
  void set_categories(std::vector<std::string> categories) {
    categories_ = std::move(categories);
  }
  bool has_category_override() const { return !categories_.empty(); }

  // Throws DuplicateKey (line 0) when the key is already present.
  void Add(AnnotationRecord record);
  const AnnotationRecord *Find(MentionKey key) const;
  const std::vector<AnnotationRecord> &records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  bool operator==(const AnnotationSet &other) const {
    return coder_id_ == other.coder_id_ && doc_id_ == other.doc_id_ &&
           scheme_ == other.scheme_ && records_ == other.records_;
  }

 private:
  std::string coder_id_;
  std::string doc_id_;
  SchemeId scheme_ = SchemeId::kExp2;
  std::vector<std::string> categories_;
  std::vector<AnnotationRecord> records_;
  std::map<MentionKey, std::size_t> index_;
};

// --- Decision script ------------------------------------------------------

enum class Answer { kYes, kNo };

class ScriptError : public Error {
 public:
  enum class Kind {
    kMissingLink,
    kUnexpectedLink,
    kMissingComment,
    kInvalidTransition,
  };
  ScriptError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Walks the four yes/no questions. Yes at question 1 gives COREF, at 2
// BRIDGE (both need an antecedent), at 3 LSIT, at 4 UNFAM; no at question 4
// gives DOUBT and needs a comment.
struct ScriptState {
  int current_question = 1;
  std::vector<Answer> answers;
  std::optional<std::string> resolved_label;
  std::optional<MentionKey> link;
  std::optional<std::string> comment;

  bool terminal() const { return resolved_label.has_value(); }
};

ScriptState ScriptAnswer(const ScriptState &state, Answer answer,
                         std::optional<MentionKey> link = std::nullopt,
                         std::optional<std::string> comment = std::nullopt);

// Replays a whole answer path from a fresh state. The link is attached to the
// final answer when it is a yes at question 1 or 2; the comment to a final
// no at question 4.
ScriptState RunScript(const std::vector<Answer> &path,
                      std::optional<MentionKey> link,
                      std::optional<std::string> comment);

// The unique answer path that reaches `label` (EXP2 labels only).
std::optional<std::vector<Answer>> ScriptPathFor(std::string_view label);

// --- Validation -----------------------------------------------------------

struct Violation {
  enum class Kind {
    kMissingKey,
    kExtraKey,
    kMissingAntecedent,
    kUnexpectedAntecedent,
    kAntecedentOrder,
    kUnknownLabel,
    kMissingComment,
  };
  Kind kind;
  MentionKey key;
  std::string message;
};

std::vector<Violation> ValidateAnnotationSet(
    const AnnotationSet &set, const std::vector<DefiniteDescription> &extracted);

// --- .ddann IO ------------------------------------------------------------

class DdannSyntaxError : public Error {
 public:
  DdannSyntaxError(std::size_t line, const std::string &reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownScheme : public Error {
 public:
  explicit UnknownScheme(const std::string &name)
      : Error("unknown annotation scheme '" + name + "'") {}
};

AnnotationSet ReadDdann(std::string_view text);
AnnotationSet ReadDdannFile(const std::string &path);

// Throws Error when a field would break the line format (tab or newline in
// a text field, empty surface or label).
std::string WriteDdann(const AnnotationSet &set);
// Writes to a temporary sibling and renames it over `path`.
void WriteDdannFile(const AnnotationSet &set, const std::string &path);

// --- Scheme conversion ----------------------------------------------------

class MissingAntecedentSurface : public Error {
 public:
  explicit MissingAntecedentSurface(const std::string &what) : Error(what) {}
};

// Head noun of every mention that may be a definite or an antecedent.
using HeadIndex = std::map<MentionKey, std::string>;

HeadIndex MakeHeadIndex(const std::vector<DefiniteDescription> &definites);

// EXP2 -> EXP1. COREF splits on head identity (ASH when the definite and its
// antecedent share a head, ASS otherwise); BRIDGE -> ASS; LSIT and UNFAM ->
// LSU; DOUBT stays. Links are dropped.
AnnotationSet ConvertScheme(const AnnotationSet &set, const HeadIndex &heads);

}  // namespace ddkit

#endif  // DDKIT_ANNOTATION_HPP_
