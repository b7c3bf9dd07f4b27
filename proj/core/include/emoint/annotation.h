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

// Crowd annotation state machine: tuple assignment, gold questions with
// immediate feedback, accuracy tracking and lockout with total discard.
//
// Every state change is expressed as an event (a JSON object) and applied
// through AnnotationTask::apply, both live and when replaying a log, so a
// replayed task is identical to the original.

#ifndef EMOINT_ANNOTATION_H_
#define EMOINT_ANNOTATION_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emoint/bws.h"
#include "emoint/dataset.h"
#include "emoint/error.h"
#include "emoint/tuples.h"

namespace emoint {

using Json = nlohmann::json;

class LockedOutError : public Error {
 public:
  using Error::Error;
};

// Submission does not match the annotator's current assignment.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UnknownTaskError : public Error {
 public:
  using Error::Error;
};

struct GoldKey {
  std::string tuple_id;
  std::set<std::string> acceptable_best;
  std::set<std::string> acceptable_worst;
};

// `tuple_id<TAB>best1|best2<TAB>worst1|...`; blank lines and lines starting
// with '#' are skipped.
std::vector<GoldKey> parse_gold_keys_text(std::string_view text,
                                          const std::string& source = "<gold>");
std::vector<GoldKey> read_gold_keys(const std::string& path);
std::string format_gold_keys(const std::vector<GoldKey>& keys);

// Throws InvalidArgument when a key names an unknown tuple, an item outside
// its tuple, has an empty set, overlapping sets, or repeats a tuple.
void validate_gold_keys(const std::vector<GoldKey>& keys, const TupleSet& ts);

struct TaskConfig {
  int target_responses_per_tuple = 3;
  double gold_rate = 0.05;
  int min_gold_before_lockout = 4;
  double min_accuracy = 0.70;
  std::int64_t assignment_ttl_ms = 30 * 60 * 1000;
  std::uint64_t seed = 0;
};

struct TaskDefinition {
  std::string task_id;
  Emotion emotion = Emotion::kAnger;
  TupleSet tuples;
  std::vector<GoldKey> gold_keys;
  std::map<std::string, std::string> item_text;  // item id -> display text
  TaskConfig config;
};

Json task_definition_to_json(const TaskDefinition& def);
TaskDefinition task_definition_from_json(const Json& j);
// Throws InvalidArgument on any broken invariant of the definition.
void validate_task_definition(const TaskDefinition& def);

struct AnnotatorState {
  std::string annotator_id;
  int gold_seen = 0;
  int gold_correct = 0;
  bool locked = false;
  int responses = 0;  // submitted, including later-discarded ones
  int retained = 0;

  std::optional<double> accuracy() const;
};

struct Assignment {
  std::uint64_t assignment_id = 0;
  std::string annotator_id;
  std::string tuple_id;
  bool gold = false;  // never shown to the annotator
  std::array<std::string, kTupleSize> display_order;
  std::int64_t issued_at_ms = 0;
  std::int64_t expires_at_ms = 0;
};

struct GoldFeedback {
  bool correct = false;
  std::string message;
};

struct Verdict {
  bool accepted = false;
  std::optional<GoldFeedback> gold_feedback;
  std::optional<double> accuracy;
  bool locked = false;
};

Json verdict_to_json(const Verdict& v);

struct NextResult {
  std::optional<Assignment> assignment;  // absent when exhausted
  int contributions = 0;
};

struct StoredResponse {
  std::uint64_t assignment_id = 0;
  BwsResponse response;
  bool discarded = false;
};

// The event sink receives every event produced by a live operation, after it
// has been applied.
using EventSink = std::function<void(const Json&)>;

// One task's state. Not thread-safe; the service serializes access.
class AnnotationTask {
 public:
  explicit AnnotationTask(TaskDefinition def);

  const TaskDefinition& definition() const { return def_; }

  // Returns the annotator's live assignment if one exists, otherwise draws a
  // new one. Throws LockedOutError for a locked annotator.
  NextResult next_assignment(const std::string& annotator_id,
                             std::int64_t now_ms, const EventSink& sink);

  // Throws InvalidResponseError for a best/worst outside the tuple or equal,
  // ProtocolError when the tuple is not currently assigned to the annotator
  // (including an expired assignment), LockedOutError when locked. A repeat
  // submission for an already answered tuple returns the first verdict.
  Verdict submit_response(const std::string& annotator_id,
                          const std::string& tuple_id, const std::string& best,
                          const std::string& worst, std::int64_t now_ms,
                          const EventSink& sink);

  void apply(const Json& event);

  // Retained responses only, in submission order.
  std::vector<BwsResponse> retained_responses() const;
  std::string export_csv() const;
  Json status() const;
  // Full state, for replay comparisons.
  Json snapshot() const;

  const AnnotatorState* annotator(const std::string& id) const;
  int retained_count(const std::string& tuple_id) const;
  const std::vector<StoredResponse>& responses() const { return responses_; }

 private:
  struct TupleState {
    int retained = 0;  // non-gold retained responses
    int pending = 0;   // non-gold live assignments
    int gold_retained = 0;
  };
  struct AnnotatorRecord {
    AnnotatorState state;
    std::set<std::string> seen;
    std::optional<Assignment> active;
    std::map<std::string, Verdict> verdicts;  // by tuple id
  };

  AnnotatorRecord& record(const std::string& id);
  void expire_stale(std::int64_t now_ms, const EventSink& sink);
  std::optional<Assignment> draw(const AnnotatorRecord& rec, std::int64_t now_ms);
  void emit(const Json& event, const EventSink& sink);
  bool should_lock(const AnnotatorState& s) const;

  void apply_assignment(const Json& e);
  void apply_expire(const Json& e);
  void apply_response(const Json& e);
  void apply_lockout(const Json& e);

  TaskDefinition def_;
  std::map<std::string, const GoldKey*> gold_;
  std::map<std::string, TupleState> tuples_;
  std::map<std::string, AnnotatorRecord> annotators_;
  std::vector<StoredResponse> responses_;
  std::uint64_t next_assignment_id_ = 1;
};

// Display wording for the two questions, parameterized by emotion.
std::string question_html(Emotion emotion);

}  // namespace emoint

#endif  // EMOINT_ANNOTATION_H_
