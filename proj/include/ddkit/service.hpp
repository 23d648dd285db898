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

// HTTP backend for the annotation wizard. Serves corpus texts and the queue
// of definite descriptions, checks every answer against the decision script
// and stores one .ddann file (plus a raw answer journal) per session.
//
//   GET  /api/texts
//   GET  /api/texts/{doc}
//   POST /api/sessions               {"coder", "doc", "scheme"}
//   GET  /api/sessions/{id}
//   GET  /api/sessions/{id}/next
//   POST /api/sessions/{id}/answers  {"key", "answer_path", "label",
//                                     "antecedent", "comment"}
//   GET  /api/sessions/{id}/export   (text/plain .ddann)
//
// Bodies are JSON.

#ifndef DDKIT_SERVICE_HPP_
#define DDKIT_SERVICE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ddkit/extraction.hpp"

namespace httplib {
class Server;
}

namespace ddkit {

struct ServiceConfig {
  std::string corpus_dir;
  std::string store_dir;
  LexiconConfig lexicon = LexiconConfig::Defaults();
};

struct HttpResult {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class AnnotationService {
 public:
  // Creates the store directory if needed and reloads the sessions found
  // there. Throws Error when a directory is unusable.
  explicit AnnotationService(ServiceConfig config);
  ~AnnotationService();

  AnnotationService(const AnnotationService &) = delete;
  AnnotationService &operator=(const AnnotationService &) = delete;

  HttpResult ListTexts();
  HttpResult GetText(const std::string &doc_id);
  HttpResult CreateSession(const std::string &body);
  HttpResult GetSession(const std::string &session_id);
  HttpResult GetNext(const std::string &session_id);
  HttpResult PostAnswer(const std::string &session_id, const std::string &body);
  HttpResult Export(const std::string &session_id);

  // Registers the routes on `server`.
  void Mount(httplib::Server &server);

  // Messages about store files that could not be reloaded.
  const std::vector<std::string> &load_warnings() const {
    return load_warnings_;
  }

 private:
  struct CorpusDoc;
  struct Session;

  std::shared_ptr<const CorpusDoc> LoadDoc(const std::string &doc_id);
  std::shared_ptr<Session> FindSession(const std::string &session_id);
  void ReloadSessions();
  std::string SessionPath(const std::string &id, const char *ext) const;

  ServiceConfig config_;
  std::mutex docs_mu_;
  std::map<std::string, std::shared_ptr<const CorpusDoc>> docs_;
  std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  int next_session_ = 1;
  std::vector<std::string> load_warnings_;
};

// Blocks serving on host:port until the process is stopped.
int Serve(AnnotationService &service, const std::string &host, int port);

}  // namespace ddkit

#endif  // DDKIT_SERVICE_HPP_
