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

#include "emoint/annotation.h"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <limits>

#include "emoint/random.h"
#include "emoint/text.h"

namespace emoint {

namespace {

std::set<std::string> parse_id_set(std::string_view field) {
  std::set<std::string> out;
  for (std::string_view part : split(field, '|')) {
    part = trim(part);
    if (!part.empty()) out.emplace(part);
  }
  return out;
}

std::string iso_timestamp(std::int64_t ms) {
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
  return buf;
}

Json assignment_to_json(const Assignment& a) {
  return {{"assignment_id", a.assignment_id},
          {"annotator_id", a.annotator_id},
          {"tuple_id", a.tuple_id},
          {"gold", a.gold},
          {"order", a.display_order},
          {"issued_at_ms", a.issued_at_ms},
          {"expires_at_ms", a.expires_at_ms}};
}

constexpr std::string_view kCorrectMessage = "Correct.";
constexpr std::string_view kWrongMessage =
    "This was a check question and your answer does not match the expected "
    "one.";

}  // namespace

std::vector<GoldKey> parse_gold_keys_text(std::string_view text,
                                          const std::string& source) {
  std::vector<GoldKey> keys;
  std::set<std::string> seen;
  const std::vector<std::string> lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) {
      throw ParseError(source, i + 1,
                       "expected 3 tab-separated columns, found " +
                           std::to_string(cols.size()));
    }
    GoldKey key;
    key.tuple_id = std::string(trim(cols[0]));
    key.acceptable_best = parse_id_set(cols[1]);
    key.acceptable_worst = parse_id_set(cols[2]);
    if (key.tuple_id.empty()) throw ParseError(source, i + 1, "empty tuple id");
    if (key.acceptable_best.empty() || key.acceptable_worst.empty()) {
      throw ParseError(source, i + 1, "empty acceptable answer set");
    }
    if (!seen.insert(key.tuple_id).second) {
      throw ParseError(source, i + 1, "duplicate gold key for " + key.tuple_id);
    }
    keys.push_back(std::move(key));
  }
  return keys;
}

std::vector<GoldKey> read_gold_keys(const std::string& path) {
  return parse_gold_keys_text(read_file(path), path);
}

std::string format_gold_keys(const std::vector<GoldKey>& keys) {
  std::string out;
  for (const GoldKey& k : keys) {
    out += k.tuple_id + "\t" +
           join({k.acceptable_best.begin(), k.acceptable_best.end()}, "|") +
           "\t" +
           join({k.acceptable_worst.begin(), k.acceptable_worst.end()}, "|") +
           "\n";
  }
  return out;
}

void validate_gold_keys(const std::vector<GoldKey>& keys, const TupleSet& ts) {
  std::set<std::string> seen;
  for (const GoldKey& k : keys) {
    const Tuple4* t = ts.find(k.tuple_id);
    if (t == nullptr) {
      throw InvalidArgument("gold key names unknown tuple '" + k.tuple_id + "'");
    }
    if (!seen.insert(k.tuple_id).second) {
      throw InvalidArgument("duplicate gold key for tuple '" + k.tuple_id + "'");
    }
    if (k.acceptable_best.empty() || k.acceptable_worst.empty()) {
      throw InvalidArgument("gold key for '" + k.tuple_id +
                            "' has an empty answer set");
    }
    for (const auto* set : {&k.acceptable_best, &k.acceptable_worst}) {
      for (const std::string& id : *set) {
        if (!t->contains(id)) {
          throw InvalidArgument("gold key for '" + k.tuple_id + "' names '" +
                                id + "', which is not in the tuple");
        }
      }
    }
    for (const std::string& id : k.acceptable_best) {
      if (k.acceptable_worst.count(id) != 0) {
        throw InvalidArgument("gold key for '" + k.tuple_id + "' lists '" + id +
                              "' as both best and worst");
      }
    }
  }
}

Json task_definition_to_json(const TaskDefinition& def) {
  Json tuples = Json::array();
  for (const Tuple4& t : def.tuples.tuples) {
    tuples.push_back({{"tuple_id", t.tuple_id}, {"items", t.items}});
  }
  Json gold = Json::array();
  for (const GoldKey& k : def.gold_keys) {
    gold.push_back({{"tuple_id", k.tuple_id},
                    {"best", k.acceptable_best},
                    {"worst", k.acceptable_worst}});
  }
  const TaskConfig& c = def.config;
  return {{"task_id", def.task_id},
          {"emotion", std::string(emotion_name(def.emotion))},
          {"tuples", tuples},
          {"items", def.tuples.items},
          {"tuple_seed", def.tuples.seed},
          {"gold_keys", gold},
          {"item_text", def.item_text},
          {"config",
           {{"target_responses_per_tuple", c.target_responses_per_tuple},
            {"gold_rate", c.gold_rate},
            {"min_gold_before_lockout", c.min_gold_before_lockout},
            {"min_accuracy", c.min_accuracy},
            {"assignment_ttl_ms", c.assignment_ttl_ms},
            {"seed", c.seed}}}};
}

TaskDefinition task_definition_from_json(const Json& j) {
  try {
    TaskDefinition def;
    def.task_id = j.at("task_id").get<std::string>();
    const auto emotion = parse_emotion(j.at("emotion").get<std::string>());
    if (!emotion) throw InvalidArgument("unknown emotion in task definition");
    def.emotion = *emotion;
    for (const Json& t : j.at("tuples")) {
      def.tuples.tuples.push_back(
          {t.at("tuple_id").get<std::string>(),
           t.at("items").get<std::array<std::string, kTupleSize>>()});
    }
    def.tuples.items = j.at("items").get<std::vector<std::string>>();
    def.tuples.seed = j.value("tuple_seed", std::uint64_t{0});
    for (const Json& k : j.at("gold_keys")) {
      def.gold_keys.push_back({k.at("tuple_id").get<std::string>(),
                               k.at("best").get<std::set<std::string>>(),
                               k.at("worst").get<std::set<std::string>>()});
    }
    def.item_text = j.at("item_text").get<std::map<std::string, std::string>>();
    const Json& c = j.at("config");
    def.config.target_responses_per_tuple = c.at("target_responses_per_tuple");
    def.config.gold_rate = c.at("gold_rate");
    def.config.min_gold_before_lockout = c.at("min_gold_before_lockout");
    def.config.min_accuracy = c.at("min_accuracy");
    def.config.assignment_ttl_ms = c.at("assignment_ttl_ms");
    def.config.seed = c.at("seed");
    return def;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed task definition: ") + e.what());
  }
}

void validate_task_definition(const TaskDefinition& def) {
  const TaskConfig& c = def.config;
  if (def.task_id.empty()) throw InvalidArgument("task id is empty");
  if (c.target_responses_per_tuple < 1) {
    throw InvalidArgument("target_responses_per_tuple must be at least 1");
  }
  if (!(c.gold_rate >= 0.0 && c.gold_rate <= 1.0)) {
    throw InvalidArgument("gold_rate must lie in [0, 1]");
  }
  if (c.min_gold_before_lockout < 1) {
    throw InvalidArgument("min_gold_before_lockout must be at least 1");
  }
  if (!(c.min_accuracy >= 0.0 && c.min_accuracy <= 1.0)) {
    throw InvalidArgument("min_accuracy must lie in [0, 1]");
  }
  if (c.assignment_ttl_ms < 0) {
    throw InvalidArgument("assignment_ttl_ms must be non-negative");
  }
  if (def.tuples.tuples.empty()) throw InvalidArgument("task has no tuples");
  std::set<std::string> ids;
  for (const Tuple4& t : def.tuples.tuples) {
    if (!ids.insert(t.tuple_id).second) {
      throw InvalidArgument("duplicate tuple id '" + t.tuple_id + "'");
    }
    const std::set<std::string> distinct(t.items.begin(), t.items.end());
    if (distinct.size() != t.items.size()) {
      throw InvalidArgument("tuple '" + t.tuple_id + "' repeats an item");
    }
    for (const std::string& item : t.items) {
      if (def.item_text.count(item) == 0) {
        throw InvalidArgument("tuple '" + t.tuple_id + "' names item '" + item +
                              "' with no text");
      }
    }
  }
  validate_gold_keys(def.gold_keys, def.tuples);
}

Json verdict_to_json(const Verdict& v) {
  Json j = {{"accepted", v.accepted}, {"locked", v.locked}};
  j["accuracy"] = v.accuracy ? Json(*v.accuracy) : Json(nullptr);
  if (v.gold_feedback) {
    j["gold_feedback"] = {{"correct", v.gold_feedback->correct},
                          {"message", v.gold_feedback->message}};
  } else {
    j["gold_feedback"] = nullptr;
  }
  return j;
}

std::optional<double> AnnotatorState::accuracy() const {
  if (gold_seen == 0) return std::nullopt;
  return static_cast<double>(gold_correct) / gold_seen;
}

AnnotationTask::AnnotationTask(TaskDefinition def) : def_(std::move(def)) {
  validate_task_definition(def_);
  for (const Tuple4& t : def_.tuples.tuples) tuples_[t.tuple_id];
  for (const GoldKey& k : def_.gold_keys) gold_[k.tuple_id] = &k;
}

AnnotationTask::AnnotatorRecord& AnnotationTask::record(const std::string& id) {
  auto [it, inserted] = annotators_.try_emplace(id);
  if (inserted) it->second.state.annotator_id = id;
  return it->second;
}

const AnnotatorState* AnnotationTask::annotator(const std::string& id) const {
  auto it = annotators_.find(id);
  return it == annotators_.end() ? nullptr : &it->second.state;
}

int AnnotationTask::retained_count(const std::string& tuple_id) const {
  auto it = tuples_.find(tuple_id);
  return it == tuples_.end() ? 0 : it->second.retained;
}

bool AnnotationTask::should_lock(const AnnotatorState& s) const {
  return !s.locked && s.gold_seen >= def_.config.min_gold_before_lockout &&
         static_cast<double>(s.gold_correct) / s.gold_seen <
             def_.config.min_accuracy;
}

void AnnotationTask::emit(const Json& event, const EventSink& sink) {
  apply(event);
  if (sink) sink(event);
}

void AnnotationTask::expire_stale(std::int64_t now_ms, const EventSink& sink) {
  if (def_.config.assignment_ttl_ms == 0) return;
  std::vector<Json> events;
  for (const auto& [id, rec] : annotators_) {
    if (rec.active && now_ms >= rec.active->expires_at_ms) {
      events.push_back({{"type", "expire"},
                        {"task_id", def_.task_id},
                        {"annotator_id", id},
                        {"assignment_id", rec.active->assignment_id},
                        {"at_ms", now_ms}});
    }
  }
  for (const Json& e : events) emit(e, sink);
}

std::optional<Assignment> AnnotationTask::draw(const AnnotatorRecord& rec,
                                               std::int64_t now_ms) {
  Random rng(derive_seed(def_.config.seed, next_assignment_id_));
  const bool want_gold = rng.bernoulli(def_.config.gold_rate);

  const std::string* regular = nullptr;
  int best_load = std::numeric_limits<int>::max();
  for (const auto& [id, ts] : tuples_) {  // ascending tuple id
    if (rec.seen.count(id) != 0) continue;
    const int load = ts.retained + ts.pending;
    if (load >= def_.config.target_responses_per_tuple) continue;
    if (load < best_load) {
      best_load = load;
      regular = &id;
    }
  }
  if (regular == nullptr) return std::nullopt;

  Assignment a;
  a.assignment_id = next_assignment_id_;
  a.annotator_id = rec.state.annotator_id;
  a.tuple_id = *regular;
  if (want_gold) {
    std::vector<const std::string*> golds;
    for (const auto& [id, key] : gold_) {
      if (rec.seen.count(id) == 0) golds.push_back(&id);
    }
    if (!golds.empty()) {
      a.tuple_id = *golds[rng.below(golds.size())];
      a.gold = true;
    }
  }
  a.display_order = def_.tuples.find(a.tuple_id)->items;
  rng.shuffle(std::span(a.display_order));
  a.issued_at_ms = now_ms;
  a.expires_at_ms = def_.config.assignment_ttl_ms == 0
                        ? std::numeric_limits<std::int64_t>::max()
                        : now_ms + def_.config.assignment_ttl_ms;
  return a;
}

NextResult AnnotationTask::next_assignment(const std::string& annotator_id,
                                           std::int64_t now_ms,
                                           const EventSink& sink) {
  if (const AnnotatorState* s = annotator(annotator_id); s && s->locked) {
    throw LockedOutError("annotator '" + annotator_id + "' is locked out");
  }
  expire_stale(now_ms, sink);
  auto it = annotators_.find(annotator_id);
  if (it != annotators_.end() && it->second.active) {
    return {it->second.active, it->second.state.responses};
  }
  AnnotatorRecord fresh;
  fresh.state.annotator_id = annotator_id;
  const AnnotatorRecord& rec = it == annotators_.end() ? fresh : it->second;
  std::optional<Assignment> a = draw(rec, now_ms);
  if (!a) return {std::nullopt, rec.state.responses};
  Json event = assignment_to_json(*a);
  event["type"] = "assignment";
  event["task_id"] = def_.task_id;
  emit(event, sink);
  const AnnotatorRecord& after = annotators_.at(annotator_id);
  return {after.active, after.state.responses};
}

Verdict AnnotationTask::submit_response(const std::string& annotator_id,
                                        const std::string& tuple_id,
                                        const std::string& best,
                                        const std::string& worst,
                                        std::int64_t now_ms,
                                        const EventSink& sink) {
  auto it = annotators_.find(annotator_id);
  if (it == annotators_.end()) {
    throw ProtocolError("tuple '" + tuple_id + "' is not assigned to '" +
                        annotator_id + "'");
  }
  AnnotatorRecord& rec = it->second;
  if (auto v = rec.verdicts.find(tuple_id); v != rec.verdicts.end()) {
    return v->second;
  }
  if (rec.state.locked) {
    throw LockedOutError("annotator '" + annotator_id + "' is locked out");
  }
  const bool was_expired = rec.active && rec.active->tuple_id == tuple_id &&
                           def_.config.assignment_ttl_ms != 0 &&
                           now_ms >= rec.active->expires_at_ms;
  expire_stale(now_ms, sink);
  if (was_expired) {
    throw ProtocolError("assignment for tuple '" + tuple_id + "' has expired");
  }
  if (!rec.active || rec.active->tuple_id != tuple_id) {
    throw ProtocolError("tuple '" + tuple_id + "' is not assigned to '" +
                        annotator_id + "'");
  }
  const Assignment& a = *rec.active;
  check_response(*def_.tuples.find(tuple_id), best, worst);

  Json event = {{"type", "response"},
                {"task_id", def_.task_id},
                {"annotator_id", annotator_id},
                {"assignment_id", a.assignment_id},
                {"tuple_id", tuple_id},
                {"best", best},
                {"worst", worst},
                {"gold", a.gold},
                {"at_ms", now_ms}};
  if (a.gold) {
    const GoldKey& key = *gold_.at(tuple_id);
    event["correct"] = key.acceptable_best.count(best) != 0 &&
                       key.acceptable_worst.count(worst) != 0;
  }
  emit(event, sink);
  if (should_lock(rec.state)) {
    emit({{"type", "lockout"},
          {"task_id", def_.task_id},
          {"annotator_id", annotator_id},
          {"tuple_id", tuple_id},
          {"at_ms", now_ms}},
         sink);
  }
  return rec.verdicts.at(tuple_id);
}

void AnnotationTask::apply(const Json& event) {
  const std::string type = event.at("type").get<std::string>();
  if (type == "assignment") {
    apply_assignment(event);
  } else if (type == "expire") {
    apply_expire(event);
  } else if (type == "response") {
    apply_response(event);
  } else if (type == "lockout") {
    apply_lockout(event);
  } else {
    throw InvalidArgument("unknown task event type '" + type + "'");
  }
}

void AnnotationTask::apply_assignment(const Json& e) {
  Assignment a;
  a.assignment_id = e.at("assignment_id");
  a.annotator_id = e.at("annotator_id");
  a.tuple_id = e.at("tuple_id");
  a.gold = e.at("gold");
  a.display_order = e.at("order").get<std::array<std::string, kTupleSize>>();
  a.issued_at_ms = e.at("issued_at_ms");
  a.expires_at_ms = e.at("expires_at_ms");
  if (tuples_.count(a.tuple_id) == 0) {
    throw InvalidArgument("assignment event names unknown tuple '" +
                          a.tuple_id + "'");
  }
  AnnotatorRecord& rec = record(a.annotator_id);
  if (rec.active) {
    throw InvalidArgument("annotator '" + a.annotator_id +
                          "' already holds an assignment");
  }
  if (!a.gold) ++tuples_.at(a.tuple_id).pending;
  rec.seen.insert(a.tuple_id);
  next_assignment_id_ = std::max(next_assignment_id_, a.assignment_id + 1);
  rec.active = std::move(a);
}

void AnnotationTask::apply_expire(const Json& e) {
  AnnotatorRecord& rec = record(e.at("annotator_id"));
  const std::uint64_t id = e.at("assignment_id");
  if (!rec.active || rec.active->assignment_id != id) return;
  if (!rec.active->gold) --tuples_.at(rec.active->tuple_id).pending;
  rec.active.reset();
}

void AnnotationTask::apply_response(const Json& e) {
  AnnotatorRecord& rec = record(e.at("annotator_id"));
  const std::uint64_t id = e.at("assignment_id");
  if (!rec.active || rec.active->assignment_id != id) {
    throw InvalidArgument("response event does not match the live assignment");
  }
  const Assignment a = *rec.active;
  rec.active.reset();

  StoredResponse stored;
  stored.assignment_id = id;
  BwsResponse& r = stored.response;
  r.tuple_id = a.tuple_id;
  r.annotator_id = a.annotator_id;
  r.best = e.at("best");
  r.worst = e.at("worst");
  r.is_gold = a.gold;
  r.timestamp = iso_timestamp(e.at("at_ms").get<std::int64_t>());

  TupleState& ts = tuples_.at(a.tuple_id);
  AnnotatorState& s = rec.state;
  Verdict v;
  v.accepted = true;
  if (a.gold) {
    const bool correct = e.at("correct");
    r.gold_correct = correct;
    ++ts.gold_retained;
    ++s.gold_seen;
    if (correct) ++s.gold_correct;
    v.gold_feedback = GoldFeedback{
        correct, std::string(correct ? kCorrectMessage : kWrongMessage)};
  } else {
    --ts.pending;
    ++ts.retained;
  }
  ++s.responses;
  ++s.retained;
  v.accuracy = s.accuracy();
  rec.verdicts[a.tuple_id] = v;
  responses_.push_back(std::move(stored));
}

void AnnotationTask::apply_lockout(const Json& e) {
  const std::string annotator_id = e.at("annotator_id");
  AnnotatorRecord& rec = record(annotator_id);
  rec.state.locked = true;
  for (StoredResponse& sr : responses_) {
    if (sr.discarded || sr.response.annotator_id != annotator_id) continue;
    sr.discarded = true;
    TupleState& ts = tuples_.at(sr.response.tuple_id);
    if (sr.response.is_gold) {
      --ts.gold_retained;
    } else {
      --ts.retained;
    }
  }
  rec.state.retained = 0;
  if (rec.active) {
    if (!rec.active->gold) --tuples_.at(rec.active->tuple_id).pending;
    rec.active.reset();
  }
  if (e.contains("tuple_id")) {
    auto v = rec.verdicts.find(e.at("tuple_id").get<std::string>());
    if (v != rec.verdicts.end()) v->second.locked = true;
  }
}

std::vector<BwsResponse> AnnotationTask::retained_responses() const {
  std::vector<BwsResponse> out;
  for (const StoredResponse& sr : responses_) {
    if (!sr.discarded) out.push_back(sr.response);
  }
  return out;
}

std::string AnnotationTask::export_csv() const {
  return format_responses(retained_responses());
}

Json AnnotationTask::status() const {
  const int target = def_.config.target_responses_per_tuple;
  Json per_tuple = Json::object();
  long long filled = 0;
  for (const auto& [id, ts] : tuples_) {
    per_tuple[id] = ts.retained;
    filled += std::min(ts.retained, target);
  }
  Json annotators = Json::array();
  for (const auto& [id, rec] : annotators_) {
    const AnnotatorState& s = rec.state;
    const auto acc = s.accuracy();
    annotators.push_back({{"annotator_id", id},
                          {"gold_seen", s.gold_seen},
                          {"gold_correct", s.gold_correct},
                          {"accuracy", acc ? Json(*acc) : Json(nullptr)},
                          {"locked", s.locked},
                          {"responses", s.responses},
                          {"retained", s.retained}});
  }
  const double total = static_cast<double>(tuples_.size()) * target;
  return {{"task_id", def_.task_id},
          {"emotion", std::string(emotion_name(def_.emotion))},
          {"tuples", tuples_.size()},
          {"gold_tuples", gold_.size()},
          {"target_responses_per_tuple", target},
          {"completion", total > 0 ? filled / total : 0.0},
          {"retained_per_tuple", per_tuple},
          {"annotators", annotators}};
}

Json AnnotationTask::snapshot() const {
  Json tuples = Json::object();
  for (const auto& [id, ts] : tuples_) {
    tuples[id] = {ts.retained, ts.pending, ts.gold_retained};
  }
  Json annotators = Json::object();
  for (const auto& [id, rec] : annotators_) {
    Json verdicts = Json::object();
    for (const auto& [tid, v] : rec.verdicts) verdicts[tid] = verdict_to_json(v);
    const AnnotatorState& s = rec.state;
    annotators[id] = {
        {"gold_seen", s.gold_seen},   {"gold_correct", s.gold_correct},
        {"locked", s.locked},         {"responses", s.responses},
        {"retained", s.retained},     {"seen", rec.seen},
        {"verdicts", verdicts},
        {"active", rec.active ? assignment_to_json(*rec.active) : Json(nullptr)}};
  }
  Json responses = Json::array();
  for (const StoredResponse& sr : responses_) {
    const BwsResponse& r = sr.response;
    responses.push_back(
        {sr.assignment_id, r.tuple_id, r.annotator_id, r.best, r.worst,
         r.is_gold, r.gold_correct ? Json(*r.gold_correct) : Json(nullptr),
         r.timestamp, sr.discarded});
  }
  return {{"task_id", def_.task_id},
          {"next_assignment_id", next_assignment_id_},
          {"tuples", tuples},
          {"annotators", annotators},
          {"responses", responses}};
}

std::string question_html(Emotion emotion) {
  std::string adj;
  switch (emotion) {
    case Emotion::kAnger: adj = "angry"; break;
    case Emotion::kFear: adj = "fearful"; break;
    case Emotion::kJoy: adj = "joyful"; break;
    case Emotion::kSadness: adj = "sad"; break;
  }
  return "<p>Read all four tweets, then judge the author's emotional state.</p>"
         "<p class=\"q-most\">Whose tweet sounds the MOST " + adj + "?</p>"
         "<p class=\"q-least\">Whose tweet sounds the LEAST " + adj + "?</p>";
}

}  // namespace emoint
