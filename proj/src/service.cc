// Copyright 2026 The Interlingua Repair Authors
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

#include "repair/service.h"

#include "httplib.h"
#include "repair/repairmem.h"

namespace repair {

using nlohmann::json;

struct SessionService::Entry {
  std::string id;
  std::mutex mutex;
  std::unique_ptr<Session> session;
};

namespace {

const char *source_name(ChunkSource s) {
  switch (s) {
    case ChunkSource::kSkipped: return "skipped";
    case ChunkSource::kWord: return "word";
    case ChunkSource::kDemoted: return "demoted";
    case ChunkSource::kCombined: return "combined";
  }
  return "skipped";
}

json transcript_json(const std::vector<TranscriptEntry> &transcript) {
  json out = json::array();
  for (const TranscriptEntry &e : transcript) {
    out.push_back({{"question", e.question}, {"answer", e.answer ? "yes" : "no"}});
  }
  return out;
}

json snapshot(const std::string &id, const Session &session,
              const InterlinguaSpec &spec, const Glosses &glosses) {
  const DynamicRepairMemory &drm = session.memory();
  json chunks = json::array();
  for (const Chunk &c : drm.chunks) {
    json chunk = {{"id", c.id},
                  {"fs", print_fs(c.fs)},
                  {"words", c.words},
                  {"consumed", c.consumed},
                  {"source", source_name(c.source)}};
    chunk["type"] = c.leaf_type ? json(*c.leaf_type) : json(nullptr);
    chunks.push_back(std::move(chunk));
  }
  json out = {{"session", id},
              {"seq", drm.questions_asked},
              {"status", session.done() ? "done" : "awaiting-answer"},
              {"utterance", session.record().utterance},
              {"ilt", print_fs(drm.current_ilt)},
              {"ilt_paraphrase", paraphrase(drm.current_ilt, glosses)},
              {"chunks", std::move(chunks)},
              {"transcript", transcript_json(drm.transcript)},
              {"transcript_text", transcript_text(drm.transcript)}};
  if (session.done()) {
    out["text"] = nullptr;
    out["hypothesis"] = nullptr;
  } else {
    out["text"] = session.question();
    out["hypothesis"] = hypothesis_summary(*session.pending(), drm, spec);
  }
  return out;
}

}  // namespace

SessionService::SessionService(InterlinguaSpec spec, Networks nets,
                               Glosses glosses, RepairConfig defaults)
    : spec_(std::move(spec)),
      nets_(std::move(nets)),
      glosses_(std::move(glosses)),
      defaults_(std::move(defaults)) {
  declare_spec_outputs(spec_, nets_);
}

SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Entry> SessionService::find(
    const std::string &id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session " + id);
  return it->second;
}

json SessionService::create(const json &request) {
  if (!request.is_object() || !request.contains("record") ||
      !request["record"].is_string()) {
    throw ServiceError(400, "expected {\"record\": \"(record ...)\"}");
  }
  ParserOutput po;
  RepairConfig config = defaults_;
  try {
    po = read_record(request["record"].get<std::string>());
    if (request.contains("policy")) {
      config.policy = Policy::parse(request["policy"].get<std::string>());
    }
    if (request.contains("max_questions")) {
      config.max_questions = request["max_questions"].get<int>();
    }
    if (request.contains("enable_combine")) {
      config.enable_combine = request["enable_combine"].get<bool>();
    }
  } catch (const std::exception &e) {
    throw ServiceError(400, e.what());
  }
  if (config.max_questions < 0) throw ServiceError(400, "negative budget");

  auto entry = std::make_shared<Entry>();
  {
    std::shared_lock read(nets_mutex_);
    entry->session = std::make_unique<Session>(po, spec_, nets_, &nets_,
                                               glosses_, config);
  }
  {
    std::lock_guard lock(sessions_mutex_);
    entry->id = std::to_string(next_id_++);
    sessions_[entry->id] = entry;
  }
  std::lock_guard lock(entry->mutex);
  return snapshot(entry->id, *entry->session, spec_, glosses_);
}

json SessionService::question(const std::string &id) const {
  std::shared_ptr<Entry> entry = find(id);
  std::lock_guard lock(entry->mutex);
  return snapshot(id, *entry->session, spec_, glosses_);
}

json SessionService::answer(const std::string &id, const json &request) {
  std::shared_ptr<Entry> entry = find(id);
  if (!request.is_object() || !request.contains("answer") ||
      !request["answer"].is_string()) {
    throw ServiceError(400, "expected {\"answer\": \"yes\"|\"no\", \"seq\": n}");
  }
  std::string text = request["answer"].get<std::string>();
  if (text != "yes" && text != "no") {
    throw ServiceError(400, "answer must be yes or no");
  }
  std::lock_guard lock(entry->mutex);
  Session &session = *entry->session;
  if (session.done()) throw ServiceError(409, "no outstanding question");
  if (request.contains("seq")) {
    if (!request["seq"].is_number_integer() ||
        request["seq"].get<int>() != session.memory().questions_asked) {
      throw ServiceError(409, "answer is not for the outstanding question");
    }
  }
  {
    std::unique_lock write(nets_mutex_);
    session.answer(text == "yes");
  }
  return snapshot(id, session, spec_, glosses_);
}

json SessionService::finish(const std::string &id) {
  std::shared_ptr<Entry> entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->session->give_up();
  return snapshot(id, *entry->session, spec_, glosses_);
}

json SessionService::result(const std::string &id) const {
  std::shared_ptr<Entry> entry = find(id);
  std::lock_guard lock(entry->mutex);
  SessionResult r = entry->session->result();
  json out = {{"session", id},
              {"status", entry->session->done() ? "done" : "awaiting-answer"},
              {"final_ilt", print_fs(r.final_ilt)},
              {"paraphrase", paraphrase(r.final_ilt, glosses_)},
              {"questions_used", r.questions_used},
              {"questions_to_converge", r.questions_to_converge},
              {"transcript", transcript_json(r.transcript)},
              {"transcript_text", transcript_text(r.transcript)}};
  if (r.accuracy_after) {
    out["accuracy_before"] = *r.accuracy_before;
    out["accuracy_after"] = *r.accuracy_after;
  }
  return out;
}

void SessionService::remove(const std::string &id) {
  std::lock_guard lock(sessions_mutex_);
  if (sessions_.erase(id) == 0) throw ServiceError(404, "unknown session " + id);
}

Networks SessionService::networks() const {
  std::shared_lock read(nets_mutex_);
  return nets_;
}

// --- HTTP ---------------------------------------------------------------------

struct ServiceServer::Impl {
  SessionService &service;
  httplib::Server server;

  explicit Impl(SessionService &s) : service(s) {}
};

namespace {

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request &req, httplib::Response &res) {
    int status = 200;
    json body;
    try {
      body = f(req);
    } catch (const ServiceError &e) {
      status = e.status();
      body = {{"error", e.what()}};
    } catch (const json::exception &e) {
      status = 400;
      body = {{"error", e.what()}};
    } catch (const std::exception &e) {
      status = 500;
      body = {{"error", e.what()}};
    }
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
}

json parse_body(const httplib::Request &req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception &e) {
    throw ServiceError(400, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ServiceServer::ServiceServer(SessionService &service)
    : impl_(std::make_unique<Impl>(service)) {
  httplib::Server &s = impl_->server;
  SessionService *svc = &service;
  s.Post("/sessions", guarded([svc](const httplib::Request &req) {
           return svc->create(parse_body(req));
         }));
  s.Get("/sessions/:id", guarded([svc](const httplib::Request &req) {
          return svc->question(req.path_params.at("id"));
        }));
  s.Get("/sessions/:id/question", guarded([svc](const httplib::Request &req) {
          return svc->question(req.path_params.at("id"));
        }));
  s.Post("/sessions/:id/answer", guarded([svc](const httplib::Request &req) {
           return svc->answer(req.path_params.at("id"), parse_body(req));
         }));
  s.Post("/sessions/:id/finish", guarded([svc](const httplib::Request &req) {
           return svc->finish(req.path_params.at("id"));
         }));
  s.Get("/sessions/:id/result", guarded([svc](const httplib::Request &req) {
          return svc->result(req.path_params.at("id"));
        }));
  s.Delete("/sessions/:id", guarded([svc](const httplib::Request &req) {
             svc->remove(req.path_params.at("id"));
             return json{{"deleted", req.path_params.at("id")}};
           }));
}

ServiceServer::~ServiceServer() = default;

int ServiceServer::bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void ServiceServer::run() { impl_->server.listen_after_bind(); }

void ServiceServer::stop() { impl_->server.stop(); }

bool serve_http(SessionService &service, const std::string &host, int port) {
  ServiceServer server(service);
  if (server.bind(host, port) < 0) return false;
  server.run();
  return true;
}

}  // namespace repair
