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

#include "ddkit/service.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddkit/annotation.hpp"
#include "ddkit/treebank.hpp"
#include "httplib.h"
#include "json.hpp"

namespace ddkit {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct AnnotationService::CorpusDoc {
  Document doc;
  Extraction extraction;
  std::vector<NpNode> nps;
};

struct AnnotationService::Session {
  std::mutex mu;
  std::string id;
  std::shared_ptr<const CorpusDoc> doc;
  AnnotationSet set;
  std::size_t cursor = 0;
  std::map<MentionKey, Json> bodies;  // accepted answer bodies, for retries

  bool complete() const { return cursor >= doc->extraction.definites.size(); }
};

namespace {

HttpResult JsonResult(int status, const Json &body) {
  return {status, "application/json", body.dump() + "\n"};
}

HttpResult ErrorResult(int status, const std::string &message) {
  return JsonResult(status, Json{{"error", message}});
}

bool IsSafeId(const std::string &id) {
  if (id.empty() || id.size() > 200 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    auto u = static_cast<unsigned char>(ch);
    return u >= 0x80 || std::isalnum(u) || ch == '-' || ch == '_' || ch == '.';
  });
}

Json KeyJson(const std::optional<MentionKey> &key) {
  return key ? Json(key->str()) : Json(nullptr);
}

Json RecordJson(const AnnotationRecord &r) {
  return Json{{"key", r.key.str()},
              {"surface", r.surface},
              {"label", r.label},
              {"antecedent", KeyJson(r.antecedent)},
              {"comment", r.comment ? Json(*r.comment) : Json(nullptr)}};
}

Json DefiniteJson(const DefiniteDescription &dd) {
  return Json{{"key", dd.key.str()},
              {"surface", dd.surface},
              {"head", dd.head},
              {"head_pos", dd.head_pos},
              {"features", dd.features.Bits()},
              {"sentence", dd.key.sentence},
              {"begin", dd.begin},
              {"end", dd.end}};
}

Json ScriptStateJson(const ScriptState &state) {
  Json answers = Json::array();
  for (Answer a : state.answers) answers.push_back(a == Answer::kYes ? "yes" : "no");
  return Json{{"current_question", state.current_question},
              {"answers", answers},
              {"resolved_label", state.resolved_label
                                     ? Json(*state.resolved_label)
                                     : Json(nullptr)}};
}

}  // namespace

AnnotationService::AnnotationService(ServiceConfig config)
    : config_(std::move(config)) {
  std::error_code ec;
  if (!fs::is_directory(config_.corpus_dir, ec)) {
    throw Error("corpus directory " + config_.corpus_dir + " does not exist");
  }
  fs::create_directories(config_.store_dir, ec);
  if (!fs::is_directory(config_.store_dir, ec)) {
    throw Error("cannot create store directory " + config_.store_dir);
  }
  ReloadSessions();
}

AnnotationService::~AnnotationService() = default;

std::string AnnotationService::SessionPath(const std::string &id,
                                           const char *ext) const {
  return (fs::path(config_.store_dir) / (id + ext)).string();
}

std::shared_ptr<const AnnotationService::CorpusDoc> AnnotationService::LoadDoc(
    const std::string &doc_id) {
  if (!IsSafeId(doc_id)) return nullptr;
  std::lock_guard<std::mutex> lock(docs_mu_);
  if (auto it = docs_.find(doc_id); it != docs_.end()) return it->second;

  std::vector<fs::path> matches;
  for (const auto &entry : fs::directory_iterator(config_.corpus_dir)) {
    if (entry.is_regular_file() && entry.path().stem().string() == doc_id) {
      matches.push_back(entry.path());
    }
  }
  if (matches.empty()) return nullptr;
  std::sort(matches.begin(), matches.end());

  auto doc = std::make_shared<CorpusDoc>();
  doc->doc = ReadTreebankFile(matches.front().string(), doc_id);
  doc->extraction = ExtractDefinites(doc->doc, config_.lexicon);
  doc->nps = NpNodes(doc->doc);
  docs_[doc_id] = doc;
  return doc;
}

std::shared_ptr<AnnotationService::Session> AnnotationService::FindSession(
    const std::string &session_id) {
  std::shared_lock<std::shared_mutex> lock(sessions_mu_);
  auto it = sessions_.find(session_id);
  return it == sessions_.end() ? nullptr : it->second;
}

void AnnotationService::ReloadSessions() {
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(config_.store_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ddann") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto &path : files) {
    const std::string id = path.stem().string();
    try {
      auto session = std::make_shared<Session>();
      session->id = id;
      session->set = ReadDdannFile(path.string());
      session->doc = LoadDoc(session->set.doc_id());
      if (!session->doc) throw Error("document " + session->set.doc_id() + " is gone");
      const auto &queue = session->doc->extraction.definites;
      const auto &records = session->set.records();
      if (records.size() > queue.size()) throw Error("more records than definites");
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].key != queue[i].key) {
          throw Error("record " + records[i].key.str() + " is out of order");
        }
      }
      session->cursor = records.size();

      std::ifstream journal(SessionPath(id, ".journal"));
      std::string line;
      while (std::getline(journal, line)) {
        if (line.empty()) continue;
        Json entry = Json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (entry.is_discarded() || !entry.contains("key")) continue;
        if (auto key = MentionKey::Parse(entry["key"].get<std::string>())) {
          if (session->set.Find(*key)) session->bodies[*key] = entry["body"];
        }
      }

      if (id.size() > 1 && id[0] == 's') {
        try {
          next_session_ = std::max(next_session_, std::stoi(id.substr(1)) + 1);
        } catch (const std::exception &) {
        }
      }
      sessions_[id] = std::move(session);
    } catch (const std::exception &e) {
      load_warnings_.push_back(path.string() + ": " + e.what());
    }
  }
}

HttpResult AnnotationService::ListTexts() {
  std::vector<std::string> ids;
  for (const auto &entry : fs::directory_iterator(config_.corpus_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string stem = entry.path().stem().string();
    if (IsSafeId(stem) &&
        std::find(ids.begin(), ids.end(), stem) == ids.end()) {
      ids.push_back(stem);
    }
  }
  std::sort(ids.begin(), ids.end());
  return JsonResult(200, Json{{"texts", ids}});
}

HttpResult AnnotationService::GetText(const std::string &doc_id) {
  std::shared_ptr<const CorpusDoc> doc;
  try {
    doc = LoadDoc(doc_id);
  } catch (const Error &e) {
    return ErrorResult(422, e.what());
  }
  if (!doc) return ErrorResult(404, "unknown text " + doc_id);

  Json sentences = Json::array();
  for (std::size_t s = 0; s < doc->doc.sentences.size(); ++s) {
    Json mentions = Json::array();
    for (const auto &np : doc->nps) {
      if (np.key.sentence != static_cast<int>(s + 1)) continue;
      mentions.push_back({{"key", np.key.str()},
                          {"begin", np.node->begin},
                          {"end", np.node->end},
                          {"surface", np.node->Surface()},
                          {"definite", StartsWithThe(*np.node)}});
    }
    sentences.push_back({{"no", s + 1},
                         {"tokens", doc->doc.sentences[s].SurfaceTokens()},
                         {"mentions", mentions}});
  }
  Json definites = Json::array();
  for (const auto &dd : doc->extraction.definites) {
    definites.push_back(DefiniteJson(dd));
  }
  return JsonResult(200, Json{{"doc", doc_id},
                              {"sentences", sentences},
                              {"definites", definites}});
}

namespace {

Json SessionJsonLocked(const std::string &id, const AnnotationSet &set,
                       std::size_t cursor,
                       const std::vector<DefiniteDescription> &queue) {
  Json records = Json::array();
  for (const auto &r : set.records()) records.push_back(RecordJson(r));
  const bool complete = cursor >= queue.size();
  return Json{{"id", id},
              {"coder", set.coder_id()},
              {"doc", set.doc_id()},
              {"scheme", AnnotationScheme::Get(set.scheme()).name},
              {"total", queue.size()},
              {"done", cursor},
              {"complete", complete},
              {"cursor", complete ? Json(nullptr) : Json(queue[cursor].key.str())},
              {"records", records}};
}

}  // namespace

HttpResult AnnotationService::CreateSession(const std::string &body) {
  Json req = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (req.is_discarded() || !req.is_object()) {
    return ErrorResult(400, "request body must be a JSON object");
  }
  auto text_field = [&req](const char *name) -> std::optional<std::string> {
    if (!req.contains(name) || !req[name].is_string()) return std::nullopt;
    return req[name].get<std::string>();
  };
  auto coder = text_field("coder");
  auto doc_id = text_field("doc");
  auto scheme_name = text_field("scheme");
  if (!coder || coder->empty() ||
      coder->find_first_of("\t\r\n") != std::string::npos) {
    return ErrorResult(422, "'coder' must be a non-empty single-line string");
  }
  if (!doc_id) return ErrorResult(422, "'doc' is required");
  auto scheme = AnnotationScheme::ParseId(scheme_name.value_or("EXP2"));
  if (!scheme) return ErrorResult(422, "unknown scheme");
  if (*scheme != SchemeId::kExp2) {
    return ErrorResult(422, "sessions use the EXP2 decision script");
  }

  std::shared_ptr<const CorpusDoc> doc;
  try {
    doc = LoadDoc(*doc_id);
  } catch (const Error &e) {
    return ErrorResult(422, e.what());
  }
  if (!doc) return ErrorResult(404, "unknown text " + *doc_id);

  auto session = std::make_shared<Session>();
  session->doc = doc;
  session->set = AnnotationSet(*coder, *doc_id, SchemeId::kExp2);
  {
    std::unique_lock<std::shared_mutex> lock(sessions_mu_);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "s%04d", next_session_++);
    session->id = buf;
    try {
      WriteDdannFile(session->set, SessionPath(session->id, ".ddann"));
    } catch (const Error &e) {
      return ErrorResult(500, e.what());
    }
    sessions_[session->id] = session;
  }
  std::lock_guard<std::mutex> lock(session->mu);
  return JsonResult(201, SessionJsonLocked(session->id, session->set,
                                           session->cursor,
                                           doc->extraction.definites));
}

HttpResult AnnotationService::GetSession(const std::string &session_id) {
  auto session = FindSession(session_id);
  if (!session) return ErrorResult(404, "unknown session " + session_id);
  std::lock_guard<std::mutex> lock(session->mu);
  return JsonResult(200, SessionJsonLocked(session->id, session->set,
                                           session->cursor,
                                           session->doc->extraction.definites));
}

HttpResult AnnotationService::GetNext(const std::string &session_id) {
  auto session = FindSession(session_id);
  if (!session) return ErrorResult(404, "unknown session " + session_id);
  std::lock_guard<std::mutex> lock(session->mu);
  if (session->complete()) return ErrorResult(409, "session is complete");

  const CorpusDoc &doc = *session->doc;
  const DefiniteDescription &dd = doc.extraction.definites[session->cursor];
  Json sentences = Json::array();
  for (std::size_t s = 0; s < doc.doc.sentences.size(); ++s) {
    Json mentions = Json::array();
    for (const auto &np : doc.nps) {
      if (np.key.sentence != static_cast<int>(s + 1)) continue;
      mentions.push_back({{"key", np.key.str()},
                          {"begin", np.node->begin},
                          {"end", np.node->end},
                          {"surface", np.node->Surface()},
                          {"current", np.key == dd.key},
                          {"selectable", np.key < dd.key}});
    }
    sentences.push_back({{"no", s + 1},
                         {"tokens", doc.doc.sentences[s].SurfaceTokens()},
                         {"mentions", mentions}});
  }
  return JsonResult(
      200, Json{{"session", session->id},
                {"dd", DefiniteJson(dd)},
                {"context", {{"sentences", sentences}}},
                {"question", ScriptStateJson(ScriptState{})},
                {"progress",
                 {{"done", session->cursor},
                  {"total", doc.extraction.definites.size()}}}});
}

HttpResult AnnotationService::PostAnswer(const std::string &session_id,
                                         const std::string &body) {
  auto session = FindSession(session_id);
  if (!session) return ErrorResult(404, "unknown session " + session_id);
  Json req = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (req.is_discarded() || !req.is_object()) {
    return ErrorResult(400, "request body must be a JSON object");
  }

  std::lock_guard<std::mutex> lock(session->mu);
  const auto &queue = session->doc->extraction.definites;
  auto current = [&]() {
    return SessionJsonLocked(session->id, session->set, session->cursor, queue);
  };

  if (!req.contains("key") || !req["key"].is_string()) {
    return ErrorResult(422, "'key' is required");
  }
  auto key = MentionKey::Parse(req["key"].get<std::string>());
  if (!key) return ErrorResult(422, "malformed key");

  if (auto it = session->bodies.find(*key); it != session->bodies.end()) {
    if (it->second == req) return JsonResult(200, current());
    return ErrorResult(409, "key " + key->str() + " was already answered");
  }
  if (session->complete()) return ErrorResult(409, "session is complete");
  const DefiniteDescription &dd = queue[session->cursor];
  if (*key != dd.key) {
    return ErrorResult(409, "stale key " + key->str() + "; expected " +
                                dd.key.str());
  }

  std::vector<Answer> path;
  if (!req.contains("answer_path") || !req["answer_path"].is_array()) {
    return ErrorResult(422, "'answer_path' must be a list of yes/no");
  }
  for (const auto &a : req["answer_path"]) {
    if (a == "yes") {
      path.push_back(Answer::kYes);
    } else if (a == "no") {
      path.push_back(Answer::kNo);
    } else {
      return ErrorResult(422, "'answer_path' must be a list of yes/no");
    }
  }
  std::optional<MentionKey> antecedent;
  if (req.contains("antecedent") && !req["antecedent"].is_null()) {
    if (!req["antecedent"].is_string()) return ErrorResult(422, "bad antecedent");
    antecedent = MentionKey::Parse(req["antecedent"].get<std::string>());
    if (!antecedent) return ErrorResult(422, "malformed antecedent key");
  }
  std::optional<std::string> comment;
  if (req.contains("comment") && !req["comment"].is_null()) {
    if (!req["comment"].is_string()) return ErrorResult(422, "bad comment");
    comment = req["comment"].get<std::string>();
    if (comment->find_first_of("\t\r\n") != std::string::npos) {
      return ErrorResult(422, "comment must be a single line without tabs");
    }
    if (comment->empty()) comment.reset();
  }

  ScriptState state;
  try {
    state = RunScript(path, antecedent, comment);
  } catch (const ScriptError &e) {
    return ErrorResult(422, e.what());
  }
  if (!req.contains("label") || req["label"] != *state.resolved_label) {
    return ErrorResult(422, "label does not match the answer path (expected " +
                                *state.resolved_label + ")");
  }
  if (antecedent) {
    const bool exists =
        std::any_of(session->doc->nps.begin(), session->doc->nps.end(),
                    [&](const NpNode &np) { return np.key == *antecedent; });
    if (!exists) return ErrorResult(422, "antecedent " + antecedent->str() +
                                             " is not a noun phrase");
    if (!(*antecedent < dd.key)) {
      return ErrorResult(422, "antecedent " + antecedent->str() +
                                  " does not precede " + dd.key.str());
    }
  }

  AnnotationSet updated = session->set;
  updated.Add({dd.key, dd.surface, *state.resolved_label, antecedent, comment});
  try {
    {
      std::ofstream journal(SessionPath(session->id, ".journal"),
                            std::ios::app | std::ios::binary);
      journal << Json{{"key", key->str()}, {"body", req}}.dump() << "\n";
      journal.flush();
      if (!journal) throw Error("cannot append to journal");
    }
    WriteDdannFile(updated, SessionPath(session->id, ".ddann"));
  } catch (const Error &e) {
    return ErrorResult(500, e.what());
  }
  session->set = std::move(updated);
  session->bodies[*key] = req;
  ++session->cursor;
  return JsonResult(200, current());
}

HttpResult AnnotationService::Export(const std::string &session_id) {
  auto session = FindSession(session_id);
  if (!session) return ErrorResult(404, "unknown session " + session_id);
  std::lock_guard<std::mutex> lock(session->mu);
  return {200, "text/plain; charset=utf-8", WriteDdann(session->set)};
}

void AnnotationService::Mount(httplib::Server &server) {
  auto reply = [](httplib::Response &res, const HttpResult &r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/api/texts", [this, reply](const httplib::Request &,
                                         httplib::Response &res) {
    reply(res, ListTexts());
  });
  server.Get(R"(/api/texts/([^/]+))",
             [this, reply](const httplib::Request &req, httplib::Response &res) {
               reply(res, GetText(req.matches[1]));
             });
  server.Post("/api/sessions", [this, reply](const httplib::Request &req,
                                             httplib::Response &res) {
    reply(res, CreateSession(req.body));
  });
  server.Get(R"(/api/sessions/([^/]+))",
             [this, reply](const httplib::Request &req, httplib::Response &res) {
               reply(res, GetSession(req.matches[1]));
             });
  server.Get(R"(/api/sessions/([^/]+)/next)",
             [this, reply](const httplib::Request &req, httplib::Response &res) {
               reply(res, GetNext(req.matches[1]));
             });
  server.Post(R"(/api/sessions/([^/]+)/answers)",
              [this, reply](const httplib::Request &req, httplib::Response &res) {
                reply(res, PostAnswer(req.matches[1], req.body));
              });
  server.Get(R"(/api/sessions/([^/]+)/export)",
             [this, reply](const httplib::Request &req, httplib::Response &res) {
               reply(res, Export(req.matches[1]));
             });
  server.set_exception_handler([](const httplib::Request &,
                                  httplib::Response &res,
                                  std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(Json{{"error", message}}.dump() + "\n", "application/json");
  });
}

int Serve(AnnotationService &service, const std::string &host, int port) {
  httplib::Server server;
  service.Mount(server);
  if (!server.listen(host, port)) return 1;
  return 0;
}

}  // namespace ddkit
