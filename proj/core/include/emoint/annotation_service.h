// Copyright 2026 The Emoint Authors.
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

// Multi-task annotation service with bearer-token sessions, an append-only
// JSON-lines event log, and an HTTP front end.

#ifndef EMOINT_ANNOTATION_SERVICE_H_
#define EMOINT_ANNOTATION_SERVICE_H_

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "emoint/annotation.h"

namespace emoint {

class UnauthorizedError : public Error {
 public:
  using Error::Error;
};

struct ServiceOptions {
  // Empty disables persistence. An existing log is replayed on construction
  // and then appended to.
  std::string log_path;
  // Milliseconds since the epoch; injectable for tests.
  std::function<std::int64_t()> clock;
  // Session tokens; defaults to 128 random bits from std::random_device.
  std::function<std::string()> token_source;
};

class AnnotationService {
 public:
  explicit AnnotationService(ServiceOptions options = {});

  std::string create_session(const std::string& annotator_id);
  // Throws UnauthorizedError for an unknown token.
  std::string annotator_for_token(const std::string& token) const;

  // Throws InvalidArgument for an invalid definition or a taken task id. An
  // empty task id is replaced by "task-<n>". Returns the task id.
  std::string create_task(TaskDefinition def);
  bool has_task(const std::string& task_id) const;

  NextResult next_assignment(const std::string& task_id,
                             const std::string& annotator_id);
  Verdict submit_response(const std::string& task_id,
                          const std::string& annotator_id,
                          const std::string& tuple_id, const std::string& best,
                          const std::string& worst);
  Json status(const std::string& task_id) const;
  std::string export_csv(const std::string& task_id) const;
  Emotion task_emotion(const std::string& task_id) const;
  std::string item_text(const std::string& task_id,
                        const std::string& item_id) const;

  // Sessions plus every task's snapshot.
  Json snapshot() const;

  // Applies one logged event; used for replay.
  void apply(const Json& event);
  void replay_text(std::string_view log_text, const std::string& source);

 private:
  struct TaskSlot {
    mutable std::mutex mu;
    std::unique_ptr<AnnotationTask> task;
  };

  TaskSlot& slot(const std::string& task_id) const;
  void append(const Json& event);
  std::int64_t now() const;

  ServiceOptions options_;
  mutable std::shared_mutex registry_mu_;
  std::map<std::string, std::unique_ptr<TaskSlot>> tasks_;
  std::map<std::string, std::string> sessions_;  // token -> annotator
  std::mutex log_mu_;
  std::ofstream log_;
};

// JSON body of POST /api/task: {task_id?, corpus, tuples, gold_keys?,
// config?}. corpus and tuples are file contents in their usual formats.
TaskDefinition task_definition_from_request(const Json& body,
                                            std::uint64_t default_seed);

struct ServerOptions {
  std::string static_dir;   // mounted at "/" when non-empty
  std::string admin_token;  // required on admin routes when non-empty
};

class HttpServer {
 public:
  HttpServer(AnnotationService& service, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until stop(). Returns false if the socket could not be bound.
  bool listen(const std::string& host, int port);
  // Binds to an ephemeral port and returns it, or -1.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace emoint

#endif  // EMOINT_ANNOTATION_SERVICE_H_
