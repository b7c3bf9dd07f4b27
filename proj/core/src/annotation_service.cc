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

#include "emoint/annotation_service.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>

#include "emoint/text.h"

namespace emoint {

namespace {

std::int64_t system_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string random_token() {
  std::random_device rd;
  std::string out;
  for (int i = 0; i < 4; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", static_cast<unsigned>(rd()));
    out += buf;
  }
  return out;
}

}  // namespace

AnnotationService::AnnotationService(ServiceOptions options)
    : options_(std::move(options)) {
  if (!options_.clock) options_.clock = system_now_ms;
  if (!options_.token_source) options_.token_source = random_token;
  if (options_.log_path.empty()) return;
  if (std::filesystem::exists(options_.log_path)) {
    replay_text(read_file(options_.log_path), options_.log_path);
  }
  log_.open(options_.log_path, std::ios::app);
  if (!log_) throw IoError("cannot open event log " + options_.log_path);
}

std::int64_t AnnotationService::now() const { return options_.clock(); }

void AnnotationService::append(const Json& event) {
  if (options_.log_path.empty()) return;
  std::lock_guard lock(log_mu_);
  log_ << event.dump() << '\n';
  log_.flush();
  if (!log_) throw IoError("write to event log " + options_.log_path + " failed");
}

std::string AnnotationService::create_session(const std::string& annotator_id) {
  if (trim(annotator_id).empty()) throw InvalidArgument("annotator_id is empty");
  const Json event = {{"type", "session"},
                      {"token", options_.token_source()},
                      {"annotator_id", annotator_id}};
  {
    std::unique_lock lock(registry_mu_);
    if (sessions_.count(event["token"]) != 0) {
      throw Error("session token collision");
    }
    sessions_[event["token"]] = annotator_id;
    append(event);
  }
  return event["token"];
}

std::string AnnotationService::annotator_for_token(const std::string& token) const {
  std::shared_lock lock(registry_mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) throw UnauthorizedError("unknown session token");
  return it->second;
}

std::string AnnotationService::create_task(TaskDefinition def) {
  std::unique_lock lock(registry_mu_);
  if (def.task_id.empty()) def.task_id = "task-" + std::to_string(tasks_.size() + 1);
  if (tasks_.count(def.task_id) != 0) {
    throw InvalidArgument("task '" + def.task_id + "' already exists");
  }
  auto slot = std::make_unique<TaskSlot>();
  slot->task = std::make_unique<AnnotationTask>(def);
  const std::string id = def.task_id;
  append({{"type", "task_created"}, {"task", task_definition_to_json(def)}});
  tasks_[id] = std::move(slot);
  return id;
}

bool AnnotationService::has_task(const std::string& task_id) const {
  std::shared_lock lock(registry_mu_);
  return tasks_.count(task_id) != 0;
}

AnnotationService::TaskSlot& AnnotationService::slot(
    const std::string& task_id) const {
  std::shared_lock lock(registry_mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw UnknownTaskError("unknown task '" + task_id + "'");
  return *it->second;
}

NextResult AnnotationService::next_assignment(const std::string& task_id,
                                              const std::string& annotator_id) {
  TaskSlot& s = slot(task_id);
  std::lock_guard lock(s.mu);
  return s.task->next_assignment(annotator_id, now(),
                                 [this](const Json& e) { append(e); });
}

Verdict AnnotationService::submit_response(const std::string& task_id,
                                           const std::string& annotator_id,
                                           const std::string& tuple_id,
                                           const std::string& best,
                                           const std::string& worst) {
  TaskSlot& s = slot(task_id);
  std::lock_guard lock(s.mu);
  return s.task->submit_response(annotator_id, tuple_id, best, worst, now(),
                                 [this](const Json& e) { append(e); });
}

Json AnnotationService::status(const std::string& task_id) const {
  TaskSlot& s = slot(task_id);
  std::lock_guard lock(s.mu);
  return s.task->status();
}

std::string AnnotationService::export_csv(const std::string& task_id) const {
  TaskSlot& s = slot(task_id);
  std::lock_guard lock(s.mu);
  return s.task->export_csv();
}

Emotion AnnotationService::task_emotion(const std::string& task_id) const {
  return slot(task_id).task->definition().emotion;
}

std::string AnnotationService::item_text(const std::string& task_id,
                                         const std::string& item_id) const {
  const auto& texts = slot(task_id).task->definition().item_text;
  auto it = texts.find(item_id);
  return it == texts.end() ? std::string() : it->second;
}

Json AnnotationService::snapshot() const {
  std::shared_lock lock(registry_mu_);
  Json tasks = Json::object();
  for (const auto& [id, s] : tasks_) {
    std::lock_guard task_lock(s->mu);
    tasks[id] = s->task->snapshot();
  }
  return {{"sessions", sessions_}, {"tasks", tasks}};
}

void AnnotationService::apply(const Json& event) {
  const std::string type = event.at("type").get<std::string>();
  if (type == "session") {
    std::unique_lock lock(registry_mu_);
    sessions_[event.at("token").get<std::string>()] =
        event.at("annotator_id").get<std::string>();
  } else if (type == "task_created") {
    TaskDefinition def = task_definition_from_json(event.at("task"));
    std::unique_lock lock(registry_mu_);
    const std::string id = def.task_id;
    if (tasks_.count(id) != 0) {
      throw InvalidArgument("task '" + id + "' created twice");
    }
    auto slot = std::make_unique<TaskSlot>();
    slot->task = std::make_unique<AnnotationTask>(std::move(def));
    tasks_[id] = std::move(slot);
  } else {
    TaskSlot& s = slot(event.at("task_id").get<std::string>());
    std::lock_guard lock(s.mu);
    s.task->apply(event);
  }
}

void AnnotationService::replay_text(std::string_view log_text,
                                    const std::string& source) {
  const std::vector<std::string> lines = split_lines(log_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      apply(Json::parse(lines[i]));
    } catch (const Json::exception& e) {
      throw ParseError(source, i + 1, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, i + 1, e.what());
    }
  }
}

TaskDefinition task_definition_from_request(const Json& body,
                                            std::uint64_t default_seed) {
  if (!body.is_object()) throw InvalidArgument("request body must be an object");
  for (const auto& [key, value] : body.items()) {
    if (key != "task_id" && key != "corpus" && key != "tuples" && key != "gold_keys" &&
        key != "config") {
      throw InvalidArgument("unknown field '" + key + "'");
    }
  }
  auto text_field = [&](const char* name, bool required) -> std::string {
    if (!body.contains(name)) {
      if (required) throw InvalidArgument(std::string("missing field '") + name + "'");
      return {};
    }
    if (!body[name].is_string()) {
      throw InvalidArgument(std::string("field '") + name + "' must be a string");
    }
    return body[name].get<std::string>();
  };

  TaskDefinition def;
  def.task_id = text_field("task_id", false);
  const Dataset corpus =
      parse_corpus_text(text_field("corpus", true), false, "corpus");
  def.emotion = corpus.emotion();
  for (const Tweet& t : corpus.tweets()) def.item_text[t.id] = t.text;
  def.tuples = parse_tuples_text(text_field("tuples", true), "tuples");
  def.gold_keys = parse_gold_keys_text(text_field("gold_keys", false), "gold_keys");

  TaskConfig& c = def.config;
  c.seed = default_seed;
  if (body.contains("config")) {
    const Json& cfg = body["config"];
    if (!cfg.is_object()) throw InvalidArgument("config must be an object");
    try {
      for (const auto& [key, value] : cfg.items()) {
        if (key == "target_responses_per_tuple") {
          c.target_responses_per_tuple = value.get<int>();
        } else if (key == "gold_rate") {
          c.gold_rate = value.get<double>();
        } else if (key == "min_gold_before_lockout") {
          c.min_gold_before_lockout = value.get<int>();
        } else if (key == "min_accuracy") {
          c.min_accuracy = value.get<double>();
        } else if (key == "assignment_ttl_seconds") {
          c.assignment_ttl_ms = static_cast<std::int64_t>(value.get<double>() * 1000);
        } else if (key == "seed") {
          c.seed = value.get<std::uint64_t>();
        } else {
          throw InvalidArgument("unknown config key '" + key + "'");
        }
      }
    } catch (const Json::exception& e) {
      throw InvalidArgument(std::string("bad config value: ") + e.what());
    }
  }
  return def;
}

}  // namespace emoint
