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

#include <set>

#include <gtest/gtest.h>

#include "emoint/annotation_service.h"
#include "emoint/error.h"
#include "emoint/text.h"
#include "oracles.h"
#include "temp_dir.h"

namespace emoint {
namespace {

using testing::numbered_items;

// Latent intensity of item "iK" is K, so the correct answer is computable.
int latent(const std::string& item) { return std::stoi(item.substr(1)); }

std::pair<std::string, std::string> correct_answer(const Tuple4& t) {
  auto [lo, hi] = std::minmax_element(
      t.items.begin(), t.items.end(),
      [](const std::string& a, const std::string& b) { return latent(a) < latent(b); });
  return {*hi, *lo};
}

TaskDefinition make_definition(std::size_t n, std::size_t gold_count, TaskConfig cfg) {
  TaskDefinition def;
  def.task_id = "t";
  def.emotion = Emotion::kFear;
  def.tuples = generate_tuples(numbered_items(n), 3);
  for (const std::string& item : def.tuples.items) def.item_text[item] = "tweet " + item;
  for (std::size_t i = 0; i < gold_count; ++i) {
    const Tuple4& t = def.tuples.tuples[i];
    const auto [best, worst] = correct_answer(t);
    def.gold_keys.push_back({t.tuple_id, {best}, {worst}});
  }
  def.config = cfg;
  return def;
}

struct Recorder {
  std::vector<Json> events;
  EventSink sink() {
    return [this](const Json& e) { events.push_back(e); };
  }
};

// Answers the annotator's current assignment; `correct` controls gold answers.
Verdict answer(AnnotationTask& task, const std::string& who, bool correct,
               std::int64_t now, const EventSink& sink) {
  const NextResult next = task.next_assignment(who, now, sink);
  const Assignment& a = next.assignment.value();
  const Tuple4& t = *task.definition().tuples.find(a.tuple_id);
  auto [best, worst] = correct_answer(t);
  if (!correct) std::swap(best, worst);
  return task.submit_response(who, a.tuple_id, best, worst, now, sink);
}

TEST(AnnotationTaskTest, ExhaustiveDrawNeverRepeatsAndHitsTarget) {
  TaskConfig cfg;
  cfg.gold_rate = 0.0;
  AnnotationTask task(make_definition(30, 0, cfg));
  Recorder rec;
  std::map<std::string, std::set<std::string>> seen;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < 7; ++k) {
      const std::string who = "a" + std::to_string(k);
      const NextResult next = task.next_assignment(who, 0, rec.sink());
      if (!next.assignment) continue;
      ASSERT_TRUE(seen[who].insert(next.assignment->tuple_id).second);
      answer(task, who, true, 0, rec.sink());
      progress = true;
    }
  }
  for (const Tuple4& t : task.definition().tuples.tuples) {
    EXPECT_EQ(task.retained_count(t.tuple_id), 3) << t.tuple_id;
  }
  const auto rows = split_lines(task.export_csv());
  EXPECT_EQ(rows.size(), 1u + 3u * 60u);
}

TEST(AnnotationTaskTest, GoldRateOneServesEveryGoldFirst) {
  TaskConfig cfg;
  cfg.gold_rate = 1.0;
  AnnotationTask task(make_definition(30, 5, cfg));
  Recorder rec;
  std::set<std::string> golds;
  for (int i = 0; i < 5; ++i) {
    const NextResult next = task.next_assignment("a", 0, rec.sink());
    ASSERT_TRUE(next.assignment->gold);
    golds.insert(next.assignment->tuple_id);
    const Verdict v = answer(task, "a", true, 0, rec.sink());
    ASSERT_TRUE(v.gold_feedback);
    EXPECT_TRUE(v.gold_feedback->correct);
  }
  EXPECT_EQ(golds.size(), 5u);
  EXPECT_FALSE(task.next_assignment("a", 0, rec.sink()).assignment->gold);
  // Gold answers never count toward the per-tuple target.
  for (const std::string& g : golds) EXPECT_EQ(task.retained_count(g), 0);
}

TEST(AnnotationTaskTest, ExportHasRegularRowsPlusGoldRows) {
  TaskConfig cfg;
  cfg.gold_rate = 0.2;
  cfg.min_gold_before_lockout = 1000;
  AnnotationTask task(make_definition(30, 6, cfg));
  Recorder rec;
  bool progress = true;
  while (progress) {
    progress = false;
    // Enough annotators that gold checks never starve a tuple of fresh eyes.
    for (int k = 0; k < 20; ++k) {
      const std::string who = "a" + std::to_string(k);
      if (!task.next_assignment(who, 0, rec.sink()).assignment) continue;
      answer(task, who, true, 0, rec.sink());
      progress = true;
    }
  }
  std::size_t gold_rows = 0;
  for (const auto& r : task.retained_responses()) gold_rows += r.is_gold;
  EXPECT_GT(gold_rows, 0u);
  EXPECT_EQ(task.retained_responses().size(), 3u * 60u + gold_rows);
  EXPECT_EQ(split_lines(task.export_csv()).size(), 1u + 3u * 60u + gold_rows);
}

TEST(AnnotationTaskTest, LowGoldAccuracyLocksOutAndRequeues) {
  TaskConfig cfg;
  cfg.gold_rate = 0.5;
  cfg.seed = 9;
  AnnotationTask task(make_definition(30, 8, cfg));
  Recorder rec;
  // Pattern: right, right, wrong, wrong. After the third gold the accuracy is
  // 2/3 but only three checks were seen; the fourth makes it 2/4 < 0.70.
  const std::vector<bool> gold_pattern = {true, true, false, false};
  std::size_t golds = 0;
  std::set<std::string> regular_tuples;
  Verdict last;
  while (golds < gold_pattern.size()) {
    const Assignment a = *task.next_assignment("bad", 0, rec.sink()).assignment;
    if (a.gold) {
      last = answer(task, "bad", gold_pattern[golds], 0, rec.sink());
      ++golds;
      if (golds < gold_pattern.size()) {
        EXPECT_FALSE(last.locked);
      }
    } else {
      regular_tuples.insert(a.tuple_id);
      answer(task, "bad", true, 0, rec.sink());
    }
  }
  ASSERT_FALSE(regular_tuples.empty());
  EXPECT_TRUE(last.locked);
  ASSERT_TRUE(last.gold_feedback);
  EXPECT_FALSE(last.gold_feedback->correct);
  EXPECT_DOUBLE_EQ(*last.accuracy, 0.5);

  const AnnotatorState* s = task.annotator("bad");
  EXPECT_TRUE(s->locked);
  EXPECT_EQ(s->retained, 0);
  EXPECT_EQ(s->gold_seen, 4);
  EXPECT_TRUE(task.retained_responses().empty());
  for (const std::string& t : regular_tuples) EXPECT_EQ(task.retained_count(t), 0);
  EXPECT_THROW(task.next_assignment("bad", 0, rec.sink()), LockedOutError);

  // The discarded tuples are back at the front of the queue.
  const Assignment other = *task.next_assignment("good", 0, rec.sink()).assignment;
  if (!other.gold) {
    EXPECT_TRUE(regular_tuples.count(other.tuple_id)) << other.tuple_id;
  }
}

TEST(AnnotationTaskTest, InvalidResponsePersistsNothing) {
  TaskConfig cfg;
  cfg.gold_rate = 0.0;
  AnnotationTask task(make_definition(30, 0, cfg));
  Recorder rec;
  const Assignment a = *task.next_assignment("a", 0, rec.sink()).assignment;
  const std::size_t events_before = rec.events.size();
  EXPECT_THROW(task.submit_response("a", a.tuple_id, a.display_order[0],
                                    a.display_order[0], 0, rec.sink()),
               InvalidResponseError);
  EXPECT_THROW(task.submit_response("a", a.tuple_id, a.display_order[0], "zzz", 0,
                                    rec.sink()),
               InvalidResponseError);
  EXPECT_TRUE(task.responses().empty());
  EXPECT_EQ(rec.events.size(), events_before);
  EXPECT_TRUE(task.submit_response("a", a.tuple_id, a.display_order[0],
                                   a.display_order[1], 0, rec.sink())
                  .accepted);
}

TEST(AnnotationTaskTest, RepeatSubmitIsIdempotent) {
  TaskConfig cfg;
  cfg.gold_rate = 0.0;
  AnnotationTask task(make_definition(30, 0, cfg));
  Recorder rec;
  const Assignment a = *task.next_assignment("a", 0, rec.sink()).assignment;
  const Verdict v1 = task.submit_response("a", a.tuple_id, a.display_order[0],
                                          a.display_order[1], 0, rec.sink());
  const Verdict v2 = task.submit_response("a", a.tuple_id, a.display_order[2],
                                          a.display_order[3], 5, rec.sink());
  EXPECT_EQ(verdict_to_json(v1), verdict_to_json(v2));
  EXPECT_EQ(task.responses().size(), 1u);
  EXPECT_EQ(task.retained_count(a.tuple_id), 1);
}

TEST(AnnotationTaskTest, ExpiredAssignmentIsReleased) {
  TaskConfig cfg;
  cfg.gold_rate = 0.0;
  cfg.assignment_ttl_ms = 1000;
  AnnotationTask task(make_definition(30, 0, cfg));
  Recorder rec;
  const Assignment a = *task.next_assignment("a", 0, rec.sink()).assignment;
  // The live assignment is returned again before expiry.
  EXPECT_EQ(task.next_assignment("a", 500, rec.sink()).assignment->assignment_id,
            a.assignment_id);
  EXPECT_THROW(task.submit_response("a", a.tuple_id, a.display_order[0],
                                    a.display_order[1], 2000, rec.sink()),
               ProtocolError);
  EXPECT_EQ(task.snapshot()["tuples"][a.tuple_id][1], 0);
  const Assignment b = *task.next_assignment("a", 2000, rec.sink()).assignment;
  EXPECT_NE(b.tuple_id, a.tuple_id);
  // Another annotator picks the released tuple up first.
  EXPECT_EQ(task.next_assignment("c", 2000, rec.sink()).assignment->tuple_id, a.tuple_id);
}

TEST(AnnotationTaskTest, ProtocolErrors) {
  TaskConfig cfg;
  cfg.gold_rate = 0.0;
  AnnotationTask task(make_definition(30, 0, cfg));
  Recorder rec;
  EXPECT_THROW(task.submit_response("nobody", "T0001", "i1", "i2", 0, rec.sink()),
               ProtocolError);
  const Assignment a = *task.next_assignment("a", 0, rec.sink()).assignment;
  const std::string other = a.tuple_id == task.definition().tuples.tuples[0].tuple_id
                                ? task.definition().tuples.tuples[1].tuple_id
                                : task.definition().tuples.tuples[0].tuple_id;
  EXPECT_THROW(task.submit_response("a", other, "i1", "i2", 0, rec.sink()), ProtocolError);
}

TEST(AnnotationTaskTest, EmptyExportIsHeaderOnly) {
  AnnotationTask task(make_definition(30, 0, {}));
  EXPECT_EQ(task.export_csv(), std::string(kResponseCsvHeader) + "\n");
}

TEST(AnnotationTaskTest, ReplayReproducesSnapshot) {
  TaskConfig cfg;
  cfg.gold_rate = 0.3;
  cfg.assignment_ttl_ms = 100;
  cfg.seed = 4;
  const TaskDefinition def = make_definition(30, 6, cfg);
  AnnotationTask live(def);
  Recorder rec;
  Random rng(2);
  std::int64_t now = 0;
  for (int step = 0; step < 400; ++step) {
    now += static_cast<std::int64_t>(rng.below(60));
    const std::string who = "a" + std::to_string(rng.below(6));
    try {
      const NextResult next = live.next_assignment(who, now, rec.sink());
      if (!next.assignment) continue;
      if (rng.bernoulli(0.15)) continue;  // walk away; the assignment may expire
      const Tuple4& t = *def.tuples.find(next.assignment->tuple_id);
      auto [best, worst] = correct_answer(t);
      if (rng.bernoulli(0.3)) std::swap(best, worst);
      live.submit_response(who, t.tuple_id, best, worst,
                           now + static_cast<std::int64_t>(rng.below(150)), rec.sink());
    } catch (const LockedOutError&) {
    } catch (const ProtocolError&) {
    }
  }
  AnnotationTask replayed(def);
  for (const Json& e : rec.events) replayed.apply(Json::parse(e.dump()));
  EXPECT_EQ(replayed.snapshot(), live.snapshot());
  EXPECT_EQ(replayed.export_csv(), live.export_csv());
}

TEST(GoldKeyTest, ParseFormatValidate) {
  const TupleSet ts = generate_tuples(numbered_items(30), 1);
  const Tuple4& t = ts.tuples[0];
  const std::string text = "# keys\n" + t.tuple_id + "\t" + t.items[0] + "|" + t.items[1] +
                           "\t" + t.items[3] + "\n";
  const auto keys = parse_gold_keys_text(text);
  ASSERT_EQ(keys.size(), 1u);
  EXPECT_EQ(keys[0].acceptable_best.size(), 2u);
  EXPECT_NO_THROW(validate_gold_keys(keys, ts));
  EXPECT_EQ(parse_gold_keys_text(format_gold_keys(keys))[0].acceptable_worst,
            keys[0].acceptable_worst);

  auto overlap = keys;
  overlap[0].acceptable_worst.insert(t.items[0]);
  EXPECT_THROW(validate_gold_keys(overlap, ts), InvalidArgument);
  auto outside = keys;
  outside[0].acceptable_best = {"stranger"};
  EXPECT_THROW(validate_gold_keys(outside, ts), InvalidArgument);
  auto unknown = keys;
  unknown[0].tuple_id = "nope";
  EXPECT_THROW(validate_gold_keys(unknown, ts), InvalidArgument);
  EXPECT_THROW(parse_gold_keys_text(text + text), ParseError);
  EXPECT_THROW(parse_gold_keys_text("t\ta\n"), ParseError);
}

TEST(TaskDefinitionTest, JsonRoundTripAndValidation) {
  const TaskDefinition def = make_definition(30, 3, {});
  const TaskDefinition back = task_definition_from_json(task_definition_to_json(def));
  EXPECT_EQ(task_definition_to_json(back), task_definition_to_json(def));

  TaskDefinition bad = def;
  bad.config.gold_rate = 1.5;
  EXPECT_THROW(validate_task_definition(bad), InvalidArgument);
  bad = def;
  bad.item_text.erase(bad.item_text.begin());
  EXPECT_THROW(AnnotationTask{bad}, InvalidArgument);
  bad = def;
  bad.task_id.clear();
  EXPECT_THROW(validate_task_definition(bad), InvalidArgument);
}

TEST(QuestionTest, NamesEmotionAdjective) {
  EXPECT_NE(question_html(Emotion::kFear).find("MOST fearful"), std::string::npos);
  EXPECT_NE(question_html(Emotion::kJoy).find("LEAST joyful"), std::string::npos);
}

// Service level: sessions, logging and recovery.

std::string corpus_text(const TaskDefinition& def) {
  std::string out;
  for (const auto& [id, text] : def.item_text) out += id + "\t" + text + "\tfear\tNONE\n";
  return out;
}

TEST(AnnotationServiceTest, LogReplayRecoversState) {
  testing::TempDir dir;
  std::int64_t clock = 0;
  int token_counter = 0;
  ServiceOptions opt;
  opt.log_path = dir.file("events.jsonl");
  opt.clock = [&] { return clock; };
  opt.token_source = [&] { return "tok" + std::to_string(token_counter++); };

  Json live_snapshot;
  std::string live_export;
  {
    AnnotationService svc(opt);
    TaskConfig cfg;
    cfg.gold_rate = 0.25;
    const std::string task = svc.create_task(make_definition(30, 4, cfg));
    EXPECT_TRUE(svc.has_task(task));
    for (int k = 0; k < 3; ++k) {
      const std::string token = svc.create_session("ann" + std::to_string(k));
      EXPECT_EQ(svc.annotator_for_token(token), "ann" + std::to_string(k));
      for (int i = 0; i < 10; ++i) {
        clock += 7;
        const NextResult next = svc.next_assignment(task, "ann" + std::to_string(k));
        if (!next.assignment) break;
        const Assignment& a = *next.assignment;
        svc.submit_response(task, "ann" + std::to_string(k), a.tuple_id,
                            a.display_order[1], a.display_order[2]);
      }
    }
    live_snapshot = svc.snapshot();
    live_export = svc.export_csv(task);
  }
  AnnotationService recovered(opt);
  EXPECT_EQ(recovered.snapshot(), live_snapshot);
  EXPECT_EQ(recovered.export_csv("t"), live_export);
  EXPECT_EQ(recovered.annotator_for_token("tok1"), "ann1");
  EXPECT_THROW(recovered.annotator_for_token("forged"), UnauthorizedError);
  EXPECT_THROW(recovered.status("missing"), UnknownTaskError);
}

TEST(AnnotationServiceTest, CorruptLogNamesLine) {
  testing::TempDir dir;
  write_file(dir.file("log"), "{\"type\":\"session\",\"token\":\"a\",\"annotator_id\":\"x\"}\nnot json\n");
  ServiceOptions opt;
  opt.log_path = dir.file("log");
  try {
    AnnotationService svc(opt);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(TaskRequestTest, BuildsDefinitionAndRejectsUnknownKeys) {
  const TaskDefinition def = make_definition(30, 2, {});
  Json body = {{"task_id", "fear-1"},
               {"corpus", corpus_text(def)},
               {"tuples", format_tuples(def.tuples)},
               {"gold_keys", format_gold_keys(def.gold_keys)},
               {"config", {{"target_responses_per_tuple", 2}, {"assignment_ttl_seconds", 60}}}};
  const TaskDefinition got = task_definition_from_request(body, 5);
  EXPECT_EQ(got.task_id, "fear-1");
  EXPECT_EQ(got.emotion, Emotion::kFear);
  EXPECT_EQ(got.config.target_responses_per_tuple, 2);
  EXPECT_EQ(got.config.assignment_ttl_ms, 60000);
  EXPECT_EQ(got.config.seed, 5u);
  EXPECT_EQ(got.gold_keys.size(), 2u);
  body["config"]["surprise"] = 1;
  EXPECT_THROW(task_definition_from_request(body, 5), InvalidArgument);
  body["config"].erase("surprise");
  body["surprise"] = 1;
  EXPECT_THROW(task_definition_from_request(body, 5), InvalidArgument);
}

}  // namespace
}  // namespace emoint
