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

#include "ddkit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "ddkit/agreement.hpp"
#include "ddkit/annotation.hpp"
#include "ddkit/classifier.hpp"
#include "ddkit/report.hpp"
#include "ddkit/service.hpp"
#include "ddkit/treebank.hpp"

namespace ddkit {

namespace {

// Thrown for problems with the invocation itself; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> Split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

LexiconConfig ResolveLexicon(const std::string &flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char *env = std::getenv("DD_LEXICON"); env && *env) path = env;
  }
  return path.empty() ? LexiconConfig::Defaults() : LexiconConfig::Load(path);
}

OutputFormat ParseFormat(const std::string &name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "tsv") return OutputFormat::kTsv;
  if (name == "json") return OutputFormat::kJson;
  throw UsageError("unknown format '" + name + "'");
}

std::vector<AnnotationSet> ReadSets(const std::vector<std::string> &files) {
  std::vector<AnnotationSet> sets;
  for (const auto &path : files) {
    try {
      sets.push_back(ReadDdannFile(path));
    } catch (const Error &e) {
      throw Error(path + ": " + e.what());
    }
  }
  return sets;
}

// Identity on everything the set knows, overridden by `merge`.
std::map<std::string, std::string> TotalMapping(
    const AnnotationSet &set, const std::map<std::string, std::string> &merge) {
  std::map<std::string, std::string> mapping;
  for (const auto &c : set.categories()) mapping[c] = c;
  for (const auto &r : set.records()) mapping[r.label] = r.label;
  for (const auto &[from, to] : merge) {
    if (!mapping.count(from)) {
      throw UsageError("--merge names unknown category '" + from + "'");
    }
    mapping[from] = to;
  }
  return mapping;
}

std::map<std::string, std::string> FraurudMapping(const AnnotationSet &set) {
  if (set.scheme() != SchemeId::kExp2) {
    throw UsageError("--binary fraurud needs EXP2 annotations");
  }
  return {{"COREF", "SUBS"},
          {"BRIDGE", "FIRST"},
          {"LSIT", "FIRST"},
          {"UNFAM", "FIRST"},
          {"DOUBT", "DOUBT"}};
}

struct AgreeOptions {
  std::vector<std::string> files;
  std::vector<std::string> drop;
  std::string drop_mode = "any";
  std::vector<std::string> merge;
  std::string binary;
  bool per_class = false;
  bool confusion = false;
  std::string entity_class;
  std::string chains = "union";
  std::string format = "text";
};

int RunAgree(const AgreeOptions &opt, std::ostream &out) {
  const OutputFormat format = ParseFormat(opt.format);
  std::map<std::string, std::string> merge;
  for (const auto &spec : opt.merge) {
    try {
      for (auto &[k, v] : ParseMergeSpec(spec)) merge[k] = v;
    } catch (const std::invalid_argument &e) {
      throw UsageError(e.what());
    }
  }
  if (!opt.binary.empty() && opt.binary != "fraurud") {
    throw UsageError("unknown --binary split '" + opt.binary + "'");
  }
  if (!opt.binary.empty() && !merge.empty()) {
    throw UsageError("--binary and --merge cannot be combined");
  }
  if (opt.drop_mode != "any" && opt.drop_mode != "all") {
    throw UsageError("--drop-mode must be 'any' or 'all'");
  }
  if (opt.chains != "union" && opt.chains != "per-coder") {
    throw UsageError("--chains must be 'union' or 'per-coder'");
  }
  std::set<std::string> drop;
  for (const auto &d : opt.drop) {
    for (const auto &part : Split(d, ',')) {
      if (!Trim(part).empty()) drop.insert(Trim(part));
    }
  }

  Corpus corpus = GroupByDocument(ReadSets(opt.files));
  if (corpus.coders.size() < 2) {
    throw UsageError("agreement needs annotations from at least two coders");
  }

  // Drop first, then merge.
  Corpus kept;
  kept.coders = corpus.coders;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    auto sets = drop.empty()
                    ? corpus.sets[d]
                    : DropItemsWithLabels(corpus.sets[d], drop,
                                          opt.drop_mode == "any"
                                              ? DropMode::kAnyCoder
                                              : DropMode::kAllCoders);
    if (sets.front().empty() && !corpus.sets[d].front().empty()) continue;
    kept.docs.push_back(corpus.docs[d]);
    kept.sets.push_back(std::move(sets));
  }
  if (kept.docs.empty()) throw CoverageMismatch({});

  AgreementSummary summary;
  if (!opt.entity_class.empty()) {
    EntityAgreement total;
    for (const auto &sets : kept.sets) {
      auto part = ComputeEntityAgreement(
          sets, opt.entity_class,
          opt.chains == "union" ? ChainMode::kUnion : ChainMode::kPerCoder);
      total.eligible += part.eligible;
      total.entity_agree += part.entity_agree;
    }
    summary.entity = total;
    summary.entity_class = opt.entity_class;
  }

  if (!merge.empty() || !opt.binary.empty()) {
    for (auto &sets : kept.sets) {
      for (auto &set : sets) {
        set = RemapClasses(set, opt.binary.empty() ? TotalMapping(set, merge)
                                                   : FraurudMapping(set));
      }
    }
  }

  CodingMatrix cm = BuildCorpusMatrix(kept);
  summary.coders = kept.coders.size();
  summary.docs = kept.docs.size();
  summary.categories = cm.categories();
  summary.kappa = Kappa(cm);
  if (opt.per_class) summary.per_class = PerClassAgreement(cm);
  if (opt.confusion) {
    for (std::size_t a = 0; a < kept.coders.size(); ++a) {
      for (std::size_t b = a + 1; b < kept.coders.size(); ++b) {
        summary.confusion.push_back(BuildCorpusConfusion(kept, a, b));
      }
    }
  }
  out << RenderAgreement(summary, format);
  return kExitOk;
}

int RunReport(const std::vector<std::string> &files, const std::string &fmt,
              std::ostream &out) {
  const OutputFormat format = ParseFormat(fmt);
  Corpus corpus = GroupByDocument(ReadSets(files));
  std::vector<ClassDistribution> dists;
  for (std::size_t c = 0; c < corpus.coders.size(); ++c) {
    dists.push_back(Distribution(corpus, c));
  }
  std::vector<ConfusionMatrix> confusion;
  for (std::size_t a = 0; a < corpus.coders.size(); ++a) {
    for (std::size_t b = a + 1; b < corpus.coders.size(); ++b) {
      confusion.push_back(BuildCorpusConfusion(corpus, a, b));
    }
  }
  out << RenderReport(dists, confusion, format);
  return kExitOk;
}

int RunExtract(const std::vector<std::string> &files, const std::string &fmt,
               const std::string &lexicon_path, std::ostream &out,
               std::ostream &err) {
  if (fmt != "tsv") throw UsageError("extract only writes --format tsv");
  LexiconConfig lex = ResolveLexicon(lexicon_path);
  out << "key\tsurface\thead\tfeatures\n";
  for (const auto &path : files) {
    Document doc = ReadTreebankFile(path);
    Extraction ex = ExtractDefinites(doc, lex);
    out << "# doc " << doc.doc_id << "\n";
    for (const auto &dd : ex.definites) {
      out << dd.key.str() << '\t' << dd.surface << '\t' << dd.head << '\t'
          << dd.features.Bits() << '\n';
    }
    for (const auto &s : ex.skipped) {
      err << "warning: " << doc.doc_id << ": skipped " << s.reason << "\n";
    }
  }
  return kExitOk;
}

struct ClassifyOptions {
  std::vector<std::string> files;
  std::string order = "resolve-first";
  std::string matching = "strict";
  std::string lexicon;
  std::string out_path;
  std::string scheme = "exp2";
  std::string coder = "system";
};

AnnotationSet SystemAnnotation(const Document &doc, const Extraction &ex,
                               const Classification &result,
                               const std::string &coder) {
  AnnotationSet set(coder, doc.doc_id, SchemeId::kExp2);
  for (const auto &dd : ex.definites) {
    const SystemLabel &label = result.labels.at(dd.key);
    AnnotationRecord r;
    r.key = dd.key;
    r.surface = dd.surface;
    switch (label.kind) {
      case LabelKind::kAnaphoricSameHead:
        r.label = "COREF";
        r.antecedent = label.antecedent;
        break;
      case LabelKind::kLargerSituation:
        r.label = "LSIT";
        break;
      case LabelKind::kUnfamiliar:
        r.label = "UNFAM";
        break;
      case LabelKind::kUnclassified:
        r.label = "DOUBT";
        r.comment = "unclassified";
        break;
    }
    set.Add(std::move(r));
  }
  return set;
}

int RunClassify(const ClassifyOptions &opt, std::ostream &out,
                std::ostream &err) {
  ClassifierConfig cfg;
  if (opt.order == "resolve-first") {
    cfg.order = Order::kResolveFirst;
  } else if (opt.order == "classify-first") {
    cfg.order = Order::kClassifyFirst;
  } else {
    throw UsageError("--order must be resolve-first or classify-first");
  }
  if (opt.matching == "strict") {
    cfg.matching = Matching::kStrict;
  } else if (opt.matching == "loose") {
    cfg.matching = Matching::kLoose;
  } else {
    throw UsageError("--matching must be strict or loose");
  }
  auto scheme = AnnotationScheme::ParseId(opt.scheme);
  if (!scheme) throw UsageError("unknown scheme '" + opt.scheme + "'");
  if (!opt.out_path.empty() && opt.files.size() != 1) {
    throw UsageError("--out takes exactly one input file");
  }
  if (opt.coder.empty() || opt.coder.find_first_of("\t\r\n") != std::string::npos) {
    throw UsageError("--coder must be a non-empty single line");
  }
  cfg.lexicon = ResolveLexicon(opt.lexicon);

  for (const auto &path : opt.files) {
    Document doc = ReadTreebankFile(path);
    Extraction ex = ExtractDefinites(doc, cfg.lexicon);
    Classification result = ClassifyDocument(doc, cfg);
    for (const auto &d : result.diagnostics) err << "warning: " << d << "\n";
    AnnotationSet set = SystemAnnotation(doc, ex, result, opt.coder);
    if (*scheme == SchemeId::kExp1) {
      set = ConvertScheme(set, MakeHeadIndex(CollectMentions(doc)));
    }
    if (opt.out_path.empty()) {
      out << WriteDdann(set);
    } else {
      WriteDdannFile(set, opt.out_path);
    }
  }
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> ParseMergeSpec(const std::string &spec) {
  std::map<std::string, std::string> mapping;
  for (const auto &group : Split(spec, ';')) {
    if (Trim(group).empty()) continue;
    auto eq = group.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("merge group '" + group + "' lacks '='");
    }
    std::string target = Trim(group.substr(eq + 1));
    if (target.empty() || target.find_first_of("+=") != std::string::npos) {
      throw std::invalid_argument("merge group '" + group + "' has a bad target");
    }
    std::string lhs = group.substr(0, eq);
    auto sources = Split(lhs, '+');
    if (sources.empty() ||
        sources.size() != static_cast<std::size_t>(std::count(lhs.begin(), lhs.end(), '+')) + 1) {
      throw std::invalid_argument("merge group '" + group + "' has no sources");
    }
    for (const auto &raw : sources) {
      std::string source = Trim(raw);
      if (source.empty()) {
        throw std::invalid_argument("merge group '" + group + "' has an empty source");
      }
      if (mapping.count(source) && mapping[source] != target) {
        throw std::invalid_argument("category '" + source + "' merged twice");
      }
      mapping[source] = target;
    }
  }
  if (mapping.empty()) throw std::invalid_argument("empty merge spec");
  return mapping;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Definite description extraction, classification and "
               "annotation agreement"};
  app.name(args.empty() ? "dd" : args.front());
  app.require_subcommand(1);

  std::vector<std::string> extract_files;
  std::string extract_format = "tsv";
  std::string extract_lexicon;
  auto *extract = app.add_subcommand("extract", "List definite descriptions and their features");
  extract->add_option("files", extract_files, "Bracketed parse files")->required();
  extract->add_option("--format", extract_format, "Output format (tsv)");
  extract->add_option("--lexicon", extract_lexicon,
                      "Lexicon JSON (default: $DD_LEXICON or built-in)");

  ClassifyOptions classify_opt;
  auto *classify = app.add_subcommand("classify", "Classify definite descriptions heuristically");
  classify->add_option("files", classify_opt.files, "Bracketed parse files")->required();
  classify->add_option("--order", classify_opt.order,
                       "resolve-first (default) or classify-first");
  classify->add_option("--matching", classify_opt.matching,
                       "Premodifier matching: strict (default) or loose");
  classify->add_option("--lexicon", classify_opt.lexicon,
                       "Lexicon JSON (default: $DD_LEXICON or built-in)");
  classify->add_option("--out", classify_opt.out_path, "Write the .ddann file here");
  classify->add_option("--scheme", classify_opt.scheme,
                       "Output scheme: exp2 (default) or exp1");
  classify->add_option("--coder", classify_opt.coder, "Coder id (default: system)");

  AgreeOptions agree_opt;
  auto *agree = app.add_subcommand(
      "agree",
      "Kappa agreement between coders. --drop is applied before --merge.");
  agree->add_option("files", agree_opt.files, ".ddann files, one per coder and document")
      ->required();
  agree->add_option("--drop", agree_opt.drop,
                    "Drop items labeled with any of these categories (CAT,...)")
      ->delimiter(',')
      ->allow_extra_args(false);
  agree->add_option("--drop-mode", agree_opt.drop_mode,
                    "any (default): drop when any coder used a dropped label; "
                    "all: only when every coder did");
  agree->add_option("--merge", agree_opt.merge,
                    "Merge classes, e.g. \"LSIT+UNFAM=DNEW\"; groups separated by ';'")
      ->allow_extra_args(false);
  agree->add_option("--binary", agree_opt.binary,
                    "fraurud: COREF vs. everything else (EXP2)");
  agree->add_flag("--per-class", agree_opt.per_class, "Per-class agreement table");
  agree->add_flag("--confusion", agree_opt.confusion, "Pairwise confusion matrices");
  agree->add_option("--entity", agree_opt.entity_class,
                    "Antecedent agreement for this link class (e.g. COREF)");
  agree->add_option("--chains", agree_opt.chains,
                    "Entity chains: union (default) or per-coder");
  agree->add_option("--format", agree_opt.format, "text (default), tsv or json");

  std::vector<std::string> report_files;
  std::string report_format = "text";
  auto *report = app.add_subcommand("report", "Class distributions and confusion matrices");
  report->add_option("files", report_files, ".ddann files")->required();
  report->add_option("--format", report_format, "text (default), tsv or json");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string corpus_dir;
  std::string store_dir = "sessions";
  std::string serve_lexicon;
  auto *serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  serve->add_option("--port", port, "TCP port (default 8080)");
  serve->add_option("--host", host, "Bind address (default 127.0.0.1)");
  serve->add_option("--corpus", corpus_dir, "Directory of bracketed parse files")
      ->required();
  serve->add_option("--store", store_dir, "Session directory (default ./sessions)");
  serve->add_option("--lexicon", serve_lexicon, "Lexicon JSON");

  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*extract) {
      return RunExtract(extract_files, extract_format, extract_lexicon, out, err);
    }
    if (*classify) return RunClassify(classify_opt, out, err);
    if (*agree) return RunAgree(agree_opt, out);
    if (*report) return RunReport(report_files, report_format, out);
    if (*serve) {
      ServiceConfig cfg;
      cfg.corpus_dir = corpus_dir;
      cfg.store_dir = store_dir;
      cfg.lexicon = ResolveLexicon(serve_lexicon);
      AnnotationService service(cfg);
      for (const auto &w : service.load_warnings()) err << "warning: " << w << "\n";
      err << "serving on http://" << host << ":" << port << "\n";
      if (Serve(service, host, port) != 0) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitDataError;
      }
      return kExitOk;
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace ddkit
