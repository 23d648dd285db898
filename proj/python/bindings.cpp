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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ddkit/agreement.hpp"
#include "ddkit/annotation.hpp"
#include "ddkit/classifier.hpp"
#include "ddkit/cli.hpp"
#include "ddkit/extraction.hpp"
#include "ddkit/report.hpp"
#include "ddkit/treebank.hpp"

namespace py = pybind11;

namespace ddkit {
namespace {

std::string KeyRepr(const MentionKey &k) { return "MentionKey('" + k.str() + "')"; }

MentionKey KeyFromString(const std::string &text) {
  auto k = MentionKey::Parse(text);
  if (!k) throw py::value_error("malformed mention key '" + text + "'");
  return *k;
}

py::tuple RunCliCaptured(std::vector<std::string> args) {
  args.insert(args.begin(), "dd");
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = RunCli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace
}  // namespace ddkit

PYBIND11_MODULE(_core, m) {
  using namespace ddkit;
  m.doc() = "Definite description extraction, classification and agreement.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DegenerateChance>(m, "DegenerateChance", error.ptr());
  py::register_exception<CoverageMismatch>(m, "CoverageMismatch", error.ptr());
  py::register_exception<InvalidMatrix>(m, "InvalidMatrix", error.ptr());
  py::register_exception<UnmappedCategory>(m, "UnmappedCategory", error.ptr());
  py::register_exception<DdannSyntaxError>(m, "DdannSyntaxError", error.ptr());
  py::register_exception<DuplicateKey>(m, "DuplicateKey", error.ptr());
  py::register_exception<ScriptError>(m, "ScriptError", error.ptr());

  py::class_<MentionKey>(m, "MentionKey")
      .def(py::init<int, int>(), py::arg("sentence"), py::arg("index"))
      .def(py::init(&KeyFromString), py::arg("text"))
      .def_readonly("sentence", &MentionKey::sentence)
      .def_readonly("index", &MentionKey::index)
      .def("__str__", &MentionKey::str)
      .def("__repr__", &KeyRepr)
      .def("__eq__", [](const MentionKey &a, const MentionKey &b) { return a == b; })
      .def("__lt__", [](const MentionKey &a, const MentionKey &b) { return a < b; })
      .def("__hash__", [](const MentionKey &k) { return MentionKeyHash()(k); });

  // Treebank.
  py::class_<Document>(m, "Document")
      .def_readonly("doc_id", &Document::doc_id)
      .def_property_readonly("num_sentences",
                             [](const Document &d) { return d.sentences.size(); })
      .def("sentence_text",
           [](const Document &d, std::size_t n) {
             if (n < 1 || n > d.sentences.size()) throw py::index_error();
             return d.sentences[n - 1].Surface();
           },
           py::arg("sentence"))
      .def("to_bracketed", [](const Document &d) { return ToBracketed(d); })
      .def("noun_phrases", [](const Document &d) {
        std::vector<std::pair<MentionKey, std::string>> out;
        for (const auto &np : NpNodes(d)) out.emplace_back(np.key, np.node->Surface());
        return out;
      });
  m.def("parse_treebank",
        [](const std::string &text, const std::string &doc_id) {
          return ParseTreebank(text, doc_id);
        },
        py::arg("text"), py::arg("doc_id") = "doc");
  m.def("read_treebank_file", &ReadTreebankFile, py::arg("path"),
        py::arg("doc_id") = "");

  // Extraction.
  py::class_<LexiconConfig>(m, "LexiconConfig")
      .def_static("defaults", &LexiconConfig::Defaults)
      .def_static("from_json", [](const std::string &s) { return LexiconConfig::FromJson(s); })
      .def_static("load", &LexiconConfig::Load)
      .def_readwrite("unexplanatory_modifiers", &LexiconConfig::unexplanatory_modifiers)
      .def_readwrite("temporal_heads", &LexiconConfig::temporal_heads)
      .def_readwrite("complement_taking_nouns", &LexiconConfig::complement_taking_nouns)
      .def_readwrite("copula_forms", &LexiconConfig::copula_forms);

  py::class_<FeatureSet>(m, "FeatureSet")
      .def_readonly("has_np_complement", &FeatureSet::has_np_complement)
      .def_readonly("has_relative_or_pp_postmod", &FeatureSet::has_relative_or_pp_postmod)
      .def_readonly("in_apposition", &FeatureSet::in_apposition)
      .def_readonly("in_copula", &FeatureSet::in_copula)
      .def_readonly("has_unexplanatory_modifier", &FeatureSet::has_unexplanatory_modifier)
      .def_readonly("has_temporal_head", &FeatureSet::has_temporal_head)
      .def_readonly("has_proper_head_or_premod", &FeatureSet::has_proper_head_or_premod)
      .def("bits", &FeatureSet::Bits);

  py::class_<DefiniteDescription>(m, "DefiniteDescription")
      .def_readonly("key", &DefiniteDescription::key)
      .def_readonly("surface", &DefiniteDescription::surface)
      .def_readonly("head", &DefiniteDescription::head)
      .def_readonly("head_pos", &DefiniteDescription::head_pos)
      .def_property_readonly("premodifiers",
                             [](const DefiniteDescription &dd) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto &t : dd.premodifiers) out.emplace_back(t.text, t.pos);
                               return out;
                             })
      .def_readonly("postmodifiers", &DefiniteDescription::postmodifiers)
      .def_readonly("features", &DefiniteDescription::features);

  m.def("extract_definites",
        [](const Document &doc, const std::optional<LexiconConfig> &lex) {
          return ExtractDefinites(doc, lex.value_or(LexiconConfig::Defaults())).definites;
        },
        py::arg("doc"), py::arg("lexicon") = std::nullopt);

  // Classifier.
  py::enum_<LabelKind>(m, "LabelKind")
      .value("ANAPHORIC_SAME_HEAD", LabelKind::kAnaphoricSameHead)
      .value("LARGER_SITUATION", LabelKind::kLargerSituation)
      .value("UNFAMILIAR", LabelKind::kUnfamiliar)
      .value("UNCLASSIFIED", LabelKind::kUnclassified);
  py::class_<SystemLabel>(m, "SystemLabel")
      .def_readonly("kind", &SystemLabel::kind)
      .def_readonly("antecedent", &SystemLabel::antecedent)
      .def("__repr__", [](const SystemLabel &l) {
        std::string s = std::string("SystemLabel(") + LabelName(l.kind);
        if (l.antecedent) s += ", " + l.antecedent->str();
        return s + ")";
      });
  m.def("classify_document",
        [](const Document &doc, const std::string &order, const std::string &matching,
           const std::optional<LexiconConfig> &lex) {
          ClassifierConfig cfg;
          if (order == "resolve-first") {
            cfg.order = Order::kResolveFirst;
          } else if (order == "classify-first") {
            cfg.order = Order::kClassifyFirst;
          } else {
            throw py::value_error("order must be 'resolve-first' or 'classify-first'");
          }
          if (matching == "strict") {
            cfg.matching = Matching::kStrict;
          } else if (matching == "loose") {
            cfg.matching = Matching::kLoose;
          } else {
            throw py::value_error("matching must be 'strict' or 'loose'");
          }
          if (lex) cfg.lexicon = *lex;
          return ClassifyDocument(doc, cfg).labels;
        },
        py::arg("doc"), py::arg("order") = "resolve-first",
        py::arg("matching") = "strict", py::arg("lexicon") = std::nullopt);

  // Agreement.
  py::class_<CodingMatrix>(m, "CodingMatrix")
      .def(py::init<std::vector<std::string>, std::vector<std::string>,
                    std::vector<std::vector<std::int64_t>>>(),
           py::arg("items"), py::arg("categories"), py::arg("counts"))
      .def_property_readonly("items", &CodingMatrix::items)
      .def_property_readonly("categories", &CodingMatrix::categories)
      .def_property_readonly("counts", &CodingMatrix::counts)
      .def_property_readonly("coders", &CodingMatrix::coders);

  py::class_<KappaResult>(m, "KappaResult")
      .def_readonly("per_item_s", &KappaResult::per_item_s)
      .def_readonly("pa", &KappaResult::pa)
      .def_readonly("pe", &KappaResult::pe)
      .def_readonly("k", &KappaResult::k)
      .def_readonly("t", &KappaResult::t)
      .def_readonly("z", &KappaResult::z);

  py::class_<PerClassRow>(m, "PerClassRow")
      .def_readonly("category", &PerClassRow::category)
      .def_readonly("total", &PerClassRow::total)
      .def_readonly("comparisons", &PerClassRow::comparisons)
      .def_readonly("agreements", &PerClassRow::agreements)
      .def_readonly("percentage", &PerClassRow::percentage)
      .def_property_readonly("disagreements", &PerClassRow::disagreements);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::vector<std::string> cats,
                       std::vector<std::vector<std::int64_t>> cells, std::string a,
                       std::string b) {
             return ConfusionMatrix{std::move(cats), std::move(cells), std::move(a),
                                    std::move(b)};
           }),
           py::arg("categories"), py::arg("cells"), py::arg("coder_a") = "A",
           py::arg("coder_b") = "B")
      .def_readonly("categories", &ConfusionMatrix::categories)
      .def_readonly("cells", &ConfusionMatrix::cells)
      .def_readonly("coder_a", &ConfusionMatrix::coder_a)
      .def_readonly("coder_b", &ConfusionMatrix::coder_b)
      .def("total", &ConfusionMatrix::total);

  m.def("kappa", &Kappa, py::arg("matrix"));
  m.def("per_class_agreement", &PerClassAgreement, py::arg("matrix"));
  m.def("confusion_to_coding", &ConfusionToCoding, py::arg("confusion"));

  // Annotation.
  py::enum_<SchemeId>(m, "SchemeId")
      .value("EXP1", SchemeId::kExp1)
      .value("EXP2", SchemeId::kExp2);
  py::class_<AnnotationRecord>(m, "AnnotationRecord")
      .def(py::init([](MentionKey key, std::string surface, std::string label,
                       std::optional<MentionKey> antecedent,
                       std::optional<std::string> comment) {
             return AnnotationRecord{key, std::move(surface), std::move(label), antecedent,
                                     std::move(comment)};
           }),
           py::arg("key"), py::arg("surface"), py::arg("label"),
           py::arg("antecedent") = std::nullopt, py::arg("comment") = std::nullopt)
      .def_readonly("key", &AnnotationRecord::key)
      .def_readonly("surface", &AnnotationRecord::surface)
      .def_readonly("label", &AnnotationRecord::label)
      .def_readonly("antecedent", &AnnotationRecord::antecedent)
      .def_readonly("comment", &AnnotationRecord::comment);
  py::class_<AnnotationSet>(m, "AnnotationSet")
      .def(py::init<std::string, std::string, SchemeId>(), py::arg("coder"),
           py::arg("doc"), py::arg("scheme") = SchemeId::kExp2)
      .def_property_readonly("coder_id", &AnnotationSet::coder_id)
      .def_property_readonly("doc_id", &AnnotationSet::doc_id)
      .def_property_readonly("scheme", &AnnotationSet::scheme)
      .def_property_readonly("categories", &AnnotationSet::categories)
      .def_property_readonly("records", &AnnotationSet::records)
      .def("add", &AnnotationSet::Add, py::arg("record"))
      .def("__len__", &AnnotationSet::size)
      .def("__eq__", [](const AnnotationSet &a, const AnnotationSet &b) { return a == b; });

  m.def("read_ddann", [](const std::string &text) { return ReadDdann(text); },
        py::arg("text"));
  m.def("write_ddann", &WriteDdann, py::arg("annotation"));
  m.def("validate_annotation_set",
        [](const AnnotationSet &set, const Document &doc) {
          std::vector<std::string> out;
          for (const auto &v : ValidateAnnotationSet(set, ExtractDefinites(doc).definites)) {
            out.push_back(v.message);
          }
          return out;
        },
        py::arg("annotation"), py::arg("doc"));
  m.def("build_coding_matrix", &BuildCodingMatrix, py::arg("annotations"));
  m.def("confusion_matrix", &MakeConfusionMatrix, py::arg("a"), py::arg("b"));
  m.def("remap_classes", &RemapClasses, py::arg("annotation"), py::arg("mapping"));
  m.def("drop_items_with_labels",
        [](const std::vector<AnnotationSet> &sets, const std::set<std::string> &drop,
           bool all_coders) {
          return DropItemsWithLabels(sets, drop,
                                     all_coders ? DropMode::kAllCoders : DropMode::kAnyCoder);
        },
        py::arg("annotations"), py::arg("drop"), py::arg("all_coders") = false);
  m.def("script_path",
        [](const std::string &label) -> std::optional<std::vector<std::string>> {
          auto path = ScriptPathFor(label);
          if (!path) return std::nullopt;
          std::vector<std::string> out;
          for (Answer a : *path) out.push_back(a == Answer::kYes ? "yes" : "no");
          return out;
        },
        py::arg("label"));

  m.def("run_cli", &RunCliCaptured, py::arg("args"),
        "Runs the dd tool in-process; returns (exit_code, stdout, stderr).");
}
