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

#include "ddkit/annotation.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ddkit {

namespace {

AnnotationScheme MakeExp1() {
  AnnotationScheme s;
  s.id = SchemeId::kExp1;
  s.name = "EXP1";
  s.categories = {"ASH", "ASS", "LSU", "IDIOM", "DOUBT"};
  s.preference_ranking = {"ASH", "LSU", "ASS"};
  return s;
}

AnnotationScheme MakeExp2() {
  AnnotationScheme s;
  s.id = SchemeId::kExp2;
  s.name = "EXP2";
  s.categories = {"COREF", "BRIDGE", "LSIT", "UNFAM", "DOUBT"};
  s.link_classes = {"COREF", "BRIDGE"};
  return s;
}

// Labels reached by a yes at each question.
constexpr const char *kYesLabels[] = {"COREF", "BRIDGE", "LSIT", "UNFAM"};

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

void CheckField(std::string_view value, const char *what, MentionKey key) {
  if (value.find_first_of("\t\n\r") != std::string_view::npos) {
    throw Error(std::string("record ") + key.str() + ": " + what +
                " contains a tab or line break");
  }
}

}  // namespace

// --- Schemes --------------------------------------------------------------

bool AnnotationScheme::HasCategory(std::string_view label) const {
  return std::find(categories.begin(), categories.end(), label) !=
         categories.end();
}

const AnnotationScheme &AnnotationScheme::Get(SchemeId id) {
  static const AnnotationScheme exp1 = MakeExp1();
  static const AnnotationScheme exp2 = MakeExp2();
  return id == SchemeId::kExp1 ? exp1 : exp2;
}

std::optional<SchemeId> AnnotationScheme::ParseId(std::string_view name) {
  std::string lower = ToLower(name);
  if (lower == "exp1") return SchemeId::kExp1;
  if (lower == "exp2") return SchemeId::kExp2;
  return std::nullopt;
}

// --- AnnotationSet ----------------------------------------------------------

DuplicateKey::DuplicateKey(MentionKey key, std::size_t line)
    : Error("duplicate key " + key.str() +
            (line ? " at line " + std::to_string(line) : std::string())),
      key_(key),
      line_(line) {}

const std::vector<std::string> &AnnotationSet::categories() const {
  if (!categories_.empty()) return categories_;
  return AnnotationScheme::Get(scheme_).categories;
}

void AnnotationSet::Add(AnnotationRecord record) {
  if (index_.count(record.key)) throw DuplicateKey(record.key, 0);
  index_[record.key] = records_.size();
  records_.push_back(std::move(record));
}

const AnnotationRecord *AnnotationSet::Find(MentionKey key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &records_[it->second];
}

// --- Script ---------------------------------------------------------------

ScriptState ScriptAnswer(const ScriptState &state, Answer answer,
                         std::optional<MentionKey> link,
                         std::optional<std::string> comment) {
  using Kind = ScriptError::Kind;
  if (state.terminal()) {
    throw ScriptError(Kind::kInvalidTransition,
                      "script already resolved to " + *state.resolved_label);
  }
  if (state.current_question < 1 || state.current_question > 4) {
    throw ScriptError(Kind::kInvalidTransition, "no such question");
  }
  const int q = state.current_question;
  const bool wants_link = answer == Answer::kYes && q <= 2;
  if (wants_link && !link) {
    throw ScriptError(Kind::kMissingLink,
                      "question " + std::to_string(q) +
                          " answered yes without an antecedent");
  }
  if (!wants_link && link) {
    throw ScriptError(Kind::kUnexpectedLink,
                      "antecedent given at question " + std::to_string(q));
  }
  const bool wants_comment = answer == Answer::kNo && q == 4;
  if (wants_comment && (!comment || comment->empty())) {
    throw ScriptError(Kind::kMissingComment, "a doubt needs a comment");
  }

  ScriptState next = state;
  next.answers.push_back(answer);
  if (answer == Answer::kYes) {
    next.resolved_label = kYesLabels[q - 1];
    next.link = link;
  } else if (q == 4) {
    next.resolved_label = "DOUBT";
    next.comment = comment;
  } else {
    next.current_question = q + 1;
  }
  return next;
}

ScriptState RunScript(const std::vector<Answer> &path,
                      std::optional<MentionKey> link,
                      std::optional<std::string> comment) {
  ScriptState state;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const bool last = i + 1 == path.size();
    const int q = state.current_question;
    std::optional<MentionKey> step_link;
    std::optional<std::string> step_comment;
    if (last && path[i] == Answer::kYes && q <= 2) step_link = link;
    if (last && path[i] == Answer::kNo && q == 4) step_comment = comment;
    state = ScriptAnswer(state, path[i], step_link, step_comment);
  }
  if (!state.terminal()) {
    throw ScriptError(ScriptError::Kind::kInvalidTransition,
                      "answer path stops before a label is reached");
  }
  if (link && !state.link) {
    throw ScriptError(ScriptError::Kind::kUnexpectedLink,
                      "antecedent given for " + *state.resolved_label);
  }
  return state;
}

std::optional<std::vector<Answer>> ScriptPathFor(std::string_view label) {
  for (int q = 0; q < 4; ++q) {
    if (label == kYesLabels[q]) {
      std::vector<Answer> path(static_cast<std::size_t>(q), Answer::kNo);
      path.push_back(Answer::kYes);
      return path;
    }
  }
  if (label == "DOUBT") return std::vector<Answer>(4, Answer::kNo);
  return std::nullopt;
}

// --- Validation -----------------------------------------------------------

std::vector<Violation> ValidateAnnotationSet(
    const AnnotationSet &set,
    const std::vector<DefiniteDescription> &extracted) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const AnnotationScheme &scheme = AnnotationScheme::Get(set.scheme());

  std::set<MentionKey> expected;
  for (const auto &dd : extracted) {
    expected.insert(dd.key);
    if (!set.Find(dd.key)) {
      out.push_back({Kind::kMissingKey, dd.key,
                     "definite " + dd.key.str() + " '" + dd.surface +
                         "' has no record"});
    }
  }
  for (const auto &r : set.records()) {
    const std::string k = r.key.str();
    if (!expected.count(r.key)) {
      out.push_back({Kind::kExtraKey, r.key,
                     "record " + k + " is not an extracted definite"});
    }
    if (!scheme.HasCategory(r.label)) {
      out.push_back({Kind::kUnknownLabel, r.key,
                     "record " + k + ": label '" + r.label + "' is not in " +
                         scheme.name});
    }
    if (scheme.IsLinkClass(r.label) && !r.antecedent) {
      out.push_back({Kind::kMissingAntecedent, r.key,
                     "record " + k + ": " + r.label + " needs an antecedent"});
    }
    if (!scheme.IsLinkClass(r.label) && r.antecedent) {
      out.push_back({Kind::kUnexpectedAntecedent, r.key,
                     "record " + k + ": " + r.label +
                         " must not carry an antecedent"});
    }
    if (r.antecedent && !(*r.antecedent < r.key)) {
      out.push_back({Kind::kAntecedentOrder, r.key,
                     "record " + k + ": antecedent " + r.antecedent->str() +
                         " does not precede it"});
    }
    if (scheme.id == SchemeId::kExp2 && r.label == "DOUBT" &&
        (!r.comment || r.comment->empty())) {
      out.push_back({Kind::kMissingComment, r.key,
                     "record " + k + ": DOUBT needs a comment"});
    }
  }
  return out;
}

// --- IO -------------------------------------------------------------------

DdannSyntaxError::DdannSyntaxError(std::size_t line, const std::string &reason)
    : Error("ddann line " + std::to_string(line) + ": " + reason),
      line_(line) {}

AnnotationSet ReadDdann(std::string_view text) {
  if (!IsValidUtf8(text)) throw DdannSyntaxError(0, "input is not valid UTF-8");

  AnnotationSet set;
  int header = 0;  // header lines seen
  std::optional<SchemeId> scheme;
  std::string coder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') {
      throw DdannSyntaxError(line_no, "CRLF line ending");
    }
    if (!line.empty() && line.front() == '#') continue;

    if (header == 0) {
      constexpr std::string_view kMagic = "ddann 1 ";
      if (line.substr(0, kMagic.size()) != kMagic) {
        throw DdannSyntaxError(line_no, "expected 'ddann 1 <scheme>'");
      }
      std::string_view name = line.substr(kMagic.size());
      scheme = AnnotationScheme::ParseId(name);
      if (!scheme || name != AnnotationScheme::Get(*scheme).name) {
        throw UnknownScheme(std::string(name));
      }
      ++header;
    } else if (header == 1) {
      if (line.substr(0, 6) != "coder " || line.size() == 6) {
        throw DdannSyntaxError(line_no, "expected 'coder <id>'");
      }
      coder = std::string(line.substr(6));
      ++header;
    } else if (header == 2) {
      if (line.substr(0, 4) != "doc " || line.size() == 4) {
        throw DdannSyntaxError(line_no, "expected 'doc <id>'");
      }
      set = AnnotationSet(coder, std::string(line.substr(4)), *scheme);
      ++header;
    } else {
      auto fields = SplitTabs(line);
      if (fields.size() != 5) {
        throw DdannSyntaxError(line_no, "expected 5 tab-separated fields, got " +
                                            std::to_string(fields.size()));
      }
      AnnotationRecord r;
      auto key = MentionKey::Parse(fields[0]);
      if (!key) throw DdannSyntaxError(line_no, "bad key '" + std::string(fields[0]) + "'");
      r.key = *key;
      if (fields[1].empty()) throw DdannSyntaxError(line_no, "empty surface");
      r.surface = std::string(fields[1]);
      if (fields[2].empty()) throw DdannSyntaxError(line_no, "empty label");
      r.label = std::string(fields[2]);
      if (fields[3] != "-") {
        auto ant = MentionKey::Parse(fields[3]);
        if (!ant) {
          throw DdannSyntaxError(line_no, "bad antecedent '" +
                                              std::string(fields[3]) + "'");
        }
        r.antecedent = *ant;
      }
      if (fields[4].empty()) throw DdannSyntaxError(line_no, "empty comment");
      if (fields[4] != "-") r.comment = std::string(fields[4]);
      if (set.Find(r.key)) throw DuplicateKey(r.key, line_no);
      set.Add(std::move(r));
    }
  }
  if (header < 3) throw DdannSyntaxError(line_no, "truncated header");
  return set;
}

AnnotationSet ReadDdannFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ReadDdann(buffer.str());
}

std::string WriteDdann(const AnnotationSet &set) {
  const AnnotationScheme &scheme = AnnotationScheme::Get(set.scheme());
  auto check_header = [](const std::string &value, const char *what) {
    if (value.empty() || value.find_first_of("\n\r") != std::string::npos) {
      throw Error(std::string("ddann ") + what + " id must be one non-empty line");
    }
  };
  check_header(set.coder_id(), "coder");
  check_header(set.doc_id(), "doc");

  std::string out = "ddann 1 " + scheme.name + "\ncoder " + set.coder_id() +
                    "\ndoc " + set.doc_id() + "\n";
  for (const auto &r : set.records()) {
    CheckField(r.surface, "surface", r.key);
    CheckField(r.label, "label", r.key);
    if (r.surface.empty() || r.label.empty()) {
      throw Error("record " + r.key.str() + ": empty surface or label");
    }
    out += r.key.str();
    out += '\t';
    out += r.surface;
    out += '\t';
    out += r.label;
    out += '\t';
    out += r.antecedent ? r.antecedent->str() : "-";
    out += '\t';
    if (r.comment && !r.comment->empty()) {
      CheckField(*r.comment, "comment", r.key);
      out += *r.comment;
    } else {
      out += '-';
    }
    out += '\n';
  }
  return out;
}

void WriteDdannFile(const AnnotationSet &set, const std::string &path) {
  const std::string bytes = WriteDdann(set);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << bytes;
    out.flush();
    if (!out) throw Error("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp + ": " + ec.message());
}

// --- Conversion -----------------------------------------------------------

HeadIndex MakeHeadIndex(const std::vector<DefiniteDescription> &definites) {
  HeadIndex index;
  for (const auto &dd : definites) index[dd.key] = dd.head;
  return index;
}

AnnotationSet ConvertScheme(const AnnotationSet &set, const HeadIndex &heads) {
  if (set.scheme() != SchemeId::kExp2) {
    throw Error("scheme conversion expects an EXP2 annotation set");
  }
  AnnotationSet out(set.coder_id(), set.doc_id(), SchemeId::kExp1);
  for (const auto &r : set.records()) {
    AnnotationRecord converted;
    converted.key = r.key;
    converted.surface = r.surface;
    converted.comment = r.comment;
    if (r.label == "COREF") {
      auto own = heads.find(r.key);
      auto ant = r.antecedent ? heads.find(*r.antecedent) : heads.end();
      if (own == heads.end() || ant == heads.end()) {
        throw MissingAntecedentSurface(
            "record " + r.key.str() + ": cannot compare heads with antecedent " +
            (r.antecedent ? r.antecedent->str() : std::string("(none)")));
      }
      converted.label =
          ToLower(own->second) == ToLower(ant->second) ? "ASH" : "ASS";
    } else if (r.label == "BRIDGE") {
      converted.label = "ASS";
    } else if (r.label == "LSIT" || r.label == "UNFAM") {
      converted.label = "LSU";
    } else if (r.label == "DOUBT") {
      converted.label = "DOUBT";
    } else {
      throw Error("record " + r.key.str() + ": label '" + r.label +
                  "' is not an EXP2 category");
    }
    out.Add(std::move(converted));
  }
  return out;
}

}  // namespace ddkit
