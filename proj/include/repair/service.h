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

// Session service: many concurrent repair sessions over one shared set of
// networks. Messages are JSON objects; the HTTP binding is
//
//   POST   /sessions                {"record": "(record ...)", "policy": "meta",
//                                    "max_questions": 10, "enable_combine": false}
//   GET    /sessions/{id}           snapshot
//   GET    /sessions/{id}/question  snapshot
//   POST   /sessions/{id}/answer    {"answer": "yes"|"no", "seq": n}
//   POST   /sessions/{id}/finish    end the session early
//   GET    /sessions/{id}/result    final structure and transcript
//   DELETE /sessions/{id}
//
// A snapshot carries: session, seq (answers so far), status
// ("awaiting-answer" | "done"), utterance, text (question), hypothesis
// (bracketed summary), ilt, ilt_paraphrase, chunks, transcript and
// transcript_text. `seq` in an answer must equal the snapshot's seq, so a
// second answer to the same question is refused.
//
// Errors are {"error": message} with status 400 (bad request), 404 (unknown
// session) or 409 (no outstanding question, or out-of-order answer).

#ifndef REPAIR_SERVICE_H_
#define REPAIR_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "repair/dialogue.h"
#include "repair/engine.h"
#include "repair/hypgen.h"
#include "repair/ilspec.h"
#include "repair/minet.h"

namespace repair {

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string &what)
      : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class SessionService {
 public:
  SessionService(InterlinguaSpec spec, Networks nets, Glosses glosses,
                 RepairConfig defaults = {});
  ~SessionService();

  nlohmann::json create(const nlohmann::json &request);
  nlohmann::json question(const std::string &id) const;
  nlohmann::json answer(const std::string &id, const nlohmann::json &request);
  nlohmann::json finish(const std::string &id);
  nlohmann::json result(const std::string &id) const;
  void remove(const std::string &id);

  // Copy of the shared networks, taken under the read lock.
  Networks networks() const;

 private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string &id) const;

  InterlinguaSpec spec_;
  Networks nets_;
  Glosses glosses_;
  RepairConfig defaults_;
  mutable std::shared_mutex nets_mutex_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

// HTTP front end. bind() with port 0 picks a free port and returns it.
class ServiceServer {
 public:
  explicit ServiceServer(SessionService &service);
  ~ServiceServer();

  int bind(const std::string &host, int port);
  void run();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Binds and serves until the process ends; false if the port is unavailable.
bool serve_http(SessionService &service, const std::string &host, int port);

}  // namespace repair

#endif  // REPAIR_SERVICE_H_
