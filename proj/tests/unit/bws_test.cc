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

#include "emoint/bws.h"

#include <gtest/gtest.h>

#include "emoint/error.h"
#include "emoint/metrics.h"
#include "oracles.h"

namespace emoint {
namespace {

using testing::numbered_items;
using testing::oracle_counts;
using testing::simulate_responses;

BwsResponse response(const std::string& tuple, const std::string& best,
                     const std::string& worst, const std::string& who = "a1") {
  BwsResponse r;
  r.tuple_id = tuple;
  r.annotator_id = who;
  r.best = best;
  r.worst = worst;
  return r;
}

std::map<std::string, double> latent_for(const std::vector<std::string>& items) {
  std::map<std::string, double> latent;
  for (std::size_t i = 0; i < items.size(); ++i) {
    latent[items[i]] = static_cast<double>(i) / items.size();
  }
  return latent;
}

TEST(PairOrderTest, BestAFirstWorstD) {
  const Tuple4 t{"t1", {"A", "B", "C", "D"}};
  const std::vector<PairOrder> expected = {
      {"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "D"}, {"C", "D"}};
  EXPECT_EQ(implied_pair_orders(t, "A", "D"), expected);
}

TEST(PairOrderTest, BestSWorstP) {
  const Tuple4 t{"t2", {"P", "Q", "R", "S"}};
  const std::vector<PairOrder> expected = {
      {"Q", "P"}, {"R", "P"}, {"S", "P"}, {"S", "Q"}, {"S", "R"}};
  EXPECT_EQ(implied_pair_orders(t, "S", "P"), expected);
}

TEST(ResponseTest, Validation) {
  const Tuple4 t{"t1", {"A", "B", "C", "D"}};
  EXPECT_THROW(check_response(t, "A", "A"), InvalidResponseError);
  EXPECT_THROW(check_response(t, "A", "Z"), InvalidResponseError);
  EXPECT_NO_THROW(check_response(t, "B", "C"));
}

TEST(ScoreTest, CountingArithmetic) {
  // Item X judged in 24 tuples: best 12 times, worst 6 times.
  TupleSet ts;
  ts.items = {"X"};
  std::vector<BwsResponse> responses;
  for (int i = 0; i < 24; ++i) {
    const std::string id = "t" + std::to_string(i);
    const std::string o1 = "o" + std::to_string(3 * i);
    const std::string o2 = "o" + std::to_string(3 * i + 1);
    const std::string o3 = "o" + std::to_string(3 * i + 2);
    ts.tuples.push_back({id, {"X", o1, o2, o3}});
    for (const auto& o : {o1, o2, o3}) ts.items.push_back(o);
    if (i < 12) {
      responses.push_back(response(id, "X", o1));
    } else if (i < 18) {
      responses.push_back(response(id, o1, "X"));
    } else {
      responses.push_back(response(id, o1, o2));
    }
  }
  const ScoreTable table = compute_scores(ts, responses, Emotion::kAnger);
  const ItemScore& x = table.entries.at("X");
  EXPECT_EQ(x.best, 12);
  EXPECT_EQ(x.worst, 6);
  EXPECT_EQ(x.judgments, 24);
  EXPECT_DOUBLE_EQ(x.raw, 0.25);
  EXPECT_DOUBLE_EQ(x.scaled, 0.625);
}

TEST(ScoreTest, AlwaysBestScoresOne) {
  const TupleSet ts = generate_tuples(numbered_items(30), 1);
  auto latent = latent_for(ts.items);
  latent["i7"] = 99.0;
  const auto responses = simulate_responses(ts, latent, 3, 0.0, 5);
  const ScoreTable table = compute_scores(ts, responses, Emotion::kJoy);
  EXPECT_DOUBLE_EQ(table.entries.at("i7").scaled, 1.0);
}

TEST(ScoreTest, GoldSkippedUnlessRequested) {
  TupleSet ts;
  ts.tuples = {{"t1", {"A", "B", "C", "D"}}};
  ts.items = {"A", "B", "C", "D"};
  BwsResponse gold = response("t1", "A", "D");
  gold.is_gold = true;
  gold.gold_correct = true;
  const std::vector<BwsResponse> rs = {gold, response("t1", "B", "C")};
  EXPECT_EQ(compute_scores(ts, rs, Emotion::kFear).entries.at("A").judgments, 1);
  EXPECT_EQ(compute_scores(ts, rs, Emotion::kFear, {true}).entries.at("A").judgments, 2);
  EXPECT_THROW(compute_scores(ts, std::vector<BwsResponse>{response("t9", "A", "B")}, Emotion::kFear),
               InvalidArgument);
}

TEST(ScorePropertyTest, MatchesIndependentCounting) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TupleSet ts = generate_tuples(numbered_items(30 + seed), seed);
    const auto responses =
        simulate_responses(ts, latent_for(ts.items), 3, 0.3, seed + 100);
    const ScoreTable table = compute_scores(ts, responses, Emotion::kAnger);
    const auto oracle = oracle_counts(ts, responses);
    ASSERT_EQ(table.entries.size(), oracle.size());
    for (const auto& [item, s] : oracle) {
      const ItemScore& got = table.entries.at(item);
      ASSERT_EQ(got.best, s.best);
      ASSERT_EQ(got.worst, s.worst);
      ASSERT_EQ(got.judgments, s.seen);
      ASSERT_NEAR(got.scaled, s.scaled(), 1e-15);
      ASSERT_GE(got.scaled, 0.0);
      ASSERT_LE(got.scaled, 1.0);
    }
  }
}

TEST(ScoreOracleTest, NoiseFreeAnnotatorsRecoverLatentOrder) {
  const TupleSet ts = generate_tuples(numbered_items(50), 2017);
  const auto latent = latent_for(ts.items);
  const auto responses = simulate_responses(ts, latent, 3, 0.0, 1);
  const ScoreTable table = compute_scores(ts, responses, Emotion::kAnger);
  std::vector<double> truth, scores;
  for (const auto& [item, s] : table.entries) {
    truth.push_back(latent.at(item));
    scores.push_back(s.scaled);
  }
  // Mid-range items are rarely best or worst in any of their eight tuples, so
  // many tie; over 100 designs this correlation ranges 0.95 to 0.98.
  EXPECT_GE(spearman(truth, scores), 0.93);
  // The extremes are exact: the top item always wins, the bottom always loses.
  EXPECT_EQ(table.entries.at("i49").scaled, 1.0);
  EXPECT_EQ(table.entries.at("i0").scaled, 0.0);
}

TEST(ReliabilityTest, IdenticalHalvesGiveOne) {
  // Every annotator gives the same answer, so both halves agree exactly.
  const TupleSet ts = generate_tuples(numbered_items(40), 3);
  auto responses = simulate_responses(ts, latent_for(ts.items), 2, 0.0, 0);
  const Reliability r = split_half_reliability(ts, responses, 20, 4);
  EXPECT_EQ(r.pearson, 1.0);
  EXPECT_EQ(r.spearman, 1.0);
  EXPECT_EQ(r.iterations, 20);
}

TEST(ReliabilityTest, NoiseFreeIsHigh) {
  const TupleSet ts = generate_tuples(numbered_items(50), 5);
  const auto responses = simulate_responses(ts, latent_for(ts.items), 3, 0.0, 2);
  // Halves weight each tuple 1:2, so identical annotators still land near 0.98.
  EXPECT_GE(split_half_reliability(ts, responses, 100, 6).pearson, 0.97);
}

TEST(ReliabilityTest, DeterministicAndNamesThinTuples) {
  const TupleSet ts = generate_tuples(numbered_items(30), 8);
  auto responses = simulate_responses(ts, latent_for(ts.items), 3, 0.2, 3);
  const Reliability a = split_half_reliability(ts, responses, 30, 77);
  const Reliability b = split_half_reliability(ts, responses, 30, 77);
  EXPECT_EQ(a.pearson, b.pearson);
  // Drop responses so one tuple keeps only one.
  std::vector<BwsResponse> thin;
  int kept_for_first = 0;
  for (const auto& r : responses) {
    if (r.tuple_id == ts.tuples[0].tuple_id && kept_for_first++ > 0) continue;
    thin.push_back(r);
  }
  try {
    split_half_reliability(ts, thin, 5, 1);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find(ts.tuples[0].tuple_id), std::string::npos);
  }
}

TEST(ResponseCsvTest, RoundTripWithQuoting) {
  BwsResponse gold = response("t1", "A,1", "B\"2", "ann one");
  gold.is_gold = true;
  gold.gold_correct = false;
  gold.timestamp = "2017-03-01T10:00:00Z";
  const std::vector<BwsResponse> rs = {response("t2", "C", "D"), gold};
  const std::string csv = format_responses(rs);
  EXPECT_EQ(csv.substr(0, kResponseCsvHeader.size()), kResponseCsvHeader);
  const auto back = parse_responses_text(csv);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].best, "A,1");
  EXPECT_EQ(back[1].worst, "B\"2");
  EXPECT_TRUE(back[1].is_gold);
  EXPECT_EQ(back[1].gold_correct, false);
  EXPECT_FALSE(back[0].gold_correct);
  EXPECT_EQ(back[1].timestamp, gold.timestamp);
}

TEST(ResponseCsvTest, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_responses_text(std::string(kResponseCsvHeader) + "\n").empty());
  EXPECT_THROW(parse_responses_text("wrong,header\n"), ParseError);
}

TEST(ScoresToDatasetTest, UsesCorpusTexts) {
  ScoreTable table;
  table.emotion = Emotion::kSadness;
  table.entries["x"] = ItemScore{2, 0, 4, 0.5, 0.75};
  Dataset corpus(Emotion::kSadness);
  Tweet t;
  t.id = "x";
  t.text = "so sad";
  t.emotion = Emotion::kSadness;
  corpus.add(t);
  const Dataset out = scores_to_dataset(table, &corpus);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.tweets()[0].text, "so sad");
  EXPECT_EQ(out.tweets()[0].gold_score, 0.75);
}

}  // namespace
}  // namespace emoint
