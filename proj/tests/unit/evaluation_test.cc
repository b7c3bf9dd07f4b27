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

#include "emoint/evaluation.h"

#include <gtest/gtest.h>

#include "emoint/error.h"
#include "emoint/text.h"
#include "oracles.h"

namespace emoint {
namespace {

using testing::oracle_pearson;
using testing::oracle_spearman;

Dataset gold_of(Emotion e, const std::vector<double>& scores) {
  Dataset ds(e);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    Tweet t;
    t.id = std::string(emotion_name(e)) + std::to_string(i);
    t.text = "text";
    t.emotion = e;
    t.gold_score = scores[i];
    ds.add(t);
  }
  return ds;
}

std::vector<SubmissionRow> sub_of(const Dataset& gold, const std::vector<double>& pred) {
  std::vector<SubmissionRow> rows;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const Tweet& t = gold.tweets()[i];
    rows.push_back({t.id, t.text, t.emotion, pred[i]});
  }
  return rows;
}

TEST(EvaluateTest, HighIntensitySubsetUsesGoldThreshold) {
  const std::vector<double> g = {0.2, 0.6, 0.8, 0.9};
  const std::vector<double> p = {0.9, 0.3, 0.5, 0.8};
  const Dataset gold = gold_of(Emotion::kJoy, g);
  const EvalReport r = evaluate_submission(gold, sub_of(gold, p));
  ASSERT_EQ(r.per_emotion.size(), 1u);
  const EmotionMetrics& m = r.per_emotion[0];
  EXPECT_EQ(m.n, 4u);
  EXPECT_EQ(m.n_ge05, 3u);
  EXPECT_NEAR(*m.pearson, oracle_pearson(g, p), 1e-12);
  EXPECT_NEAR(*m.spearman, oracle_spearman(g, p), 1e-12);
  const std::vector<double> g3(g.begin() + 1, g.end());
  const std::vector<double> p3(p.begin() + 1, p.end());
  EXPECT_NEAR(*m.pearson_ge05, oracle_pearson(g3, p3), 1e-12);
  EXPECT_NEAR(*m.spearman_ge05, oracle_spearman(g3, p3), 1e-12);
  EXPECT_EQ(*r.macro_pearson, *m.pearson);
}

TEST(EvaluateTest, AlignsByIdNotOrder) {
  const Dataset gold = gold_of(Emotion::kFear, {0.1, 0.5, 0.7});
  auto rows = sub_of(gold, {0.2, 0.4, 0.9});
  std::swap(rows[0], rows[2]);
  const EvalReport r = evaluate_submission(gold, rows);
  EXPECT_NEAR(*r.per_emotion[0].pearson,
              oracle_pearson(std::vector<double>{0.1, 0.5, 0.7},
                             std::vector<double>{0.2, 0.4, 0.9}),
              1e-12);
}

TEST(EvaluateTest, MissingExtraDuplicateIdsThrow) {
  const Dataset gold = gold_of(Emotion::kFear, {0.1, 0.5, 0.7});
  auto rows = sub_of(gold, {0.2, 0.4, 0.9});
  auto missing = rows;
  missing.pop_back();
  EXPECT_THROW(evaluate_submission(gold, missing), InvalidArgument);
  auto extra = rows;
  extra.push_back({"zz", "t", Emotion::kFear, 0.3});
  EXPECT_THROW(evaluate_submission(gold, extra), InvalidArgument);
  auto dup = rows;
  dup[1].id = dup[0].id;
  EXPECT_THROW(evaluate_submission(gold, dup), InvalidArgument);
}

TEST(EvaluateTest, ConstantPredictionIsAbsentWithWarning) {
  const Dataset gold = gold_of(Emotion::kAnger, {0.1, 0.5, 0.7});
  const EvalReport r = evaluate_submission(gold, sub_of(gold, {0.3, 0.3, 0.3}));
  EXPECT_FALSE(r.per_emotion[0].pearson);
  EXPECT_FALSE(r.macro_pearson);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_NE(r.to_tsv().find("NA"), std::string::npos);
}

TEST(EvaluateTest, MacroAverageSkipsUndefinedEmotion) {
  const Dataset a = gold_of(Emotion::kAnger, {0.1, 0.5, 0.7});
  const Dataset j = gold_of(Emotion::kJoy, {0.2, 0.3, 0.9});
  const Dataset s = gold_of(Emotion::kSadness, {0.2, 0.3, 0.9});
  const auto ra = sub_of(a, {0.3, 0.3, 0.3});
  const auto rj = sub_of(j, {0.1, 0.4, 0.8});
  const auto rs = sub_of(s, {0.5, 0.4, 0.8});
  const std::vector<GoldAndSubmission> pairs = {{&a, ra}, {&j, rj}, {&s, rs}};
  const EvalReport r = evaluate_submissions(pairs);
  ASSERT_TRUE(r.macro_pearson);
  EXPECT_NEAR(*r.macro_pearson,
              (*r.per_emotion[1].pearson + *r.per_emotion[2].pearson) / 2, 1e-15);
  bool warned = false;
  for (const auto& w : r.warnings) warned |= w.find("anger") != std::string::npos;
  EXPECT_TRUE(warned);

  const std::vector<GoldAndSubmission> twice = {{&j, rj}, {&j, rj}};
  EXPECT_THROW(evaluate_submissions(twice), InvalidArgument);
}

TEST(EvaluateTest, TsvLayout) {
  const Dataset gold = gold_of(Emotion::kJoy, {0.2, 0.6, 0.8, 0.9});
  const EvalReport r = evaluate_submission(gold, sub_of(gold, {0.1, 0.5, 0.6, 0.95}));
  const auto lines = split_lines(r.to_tsv());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "emotion\tn\tpearson\tspearman\tn_ge05\tpearson_ge05\tspearman_ge05");
  EXPECT_EQ(lines[1].substr(0, 6), "joy\t4\t");
  EXPECT_EQ(lines[2].substr(0, 4), "avg\t");
}

TEST(AblationTest, MiniCorpusLexiconAndEmbeddingsLearn) {
  const std::string dir = EMOINT_MINI_DATA_DIR;
  std::vector<EmotionSplit> splits;
  for (Emotion e : {Emotion::kAnger, Emotion::kFear, Emotion::kJoy, Emotion::kSadness}) {
    const std::string name(emotion_name(e));
    splits.push_back({parse_corpus(dir + "/" + name + "-train.tsv", true, e),
                      parse_corpus(dir + "/" + name + "-test.tsv", true, e)});
  }
  FeatureResources res;
  res.embeddings = std::make_shared<EmbeddingTable>(
      EmbeddingTable::load(dir + "/embeddings-10d.txt"));
  res.lexicons = {Lexicon::load(dir + "/lexicon-intensity.tsv"),
                  Lexicon::load(dir + "/lexicon-polarity.tsv")};
  std::vector<FeatureConfig> configs(2);
  configs[0].blocks = *parse_feature_blocks("L");
  configs[1].blocks = *parse_feature_blocks("WE+L");
  const AblationTable t = ablation_run(splits, configs, res);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1].label, "WE + L");
  for (const AblationRow& row : t.rows) {
    ASSERT_TRUE(row.average);
    EXPECT_GE(*row.average, 0.5) << row.label;
    ASSERT_EQ(row.pearson.size(), 4u);
  }
  EXPECT_EQ(split_lines(t.to_tsv())[0], "features\tanger\tfear\tjoy\tsadness\tavg");
}

TEST(GoldScoresTest, MissingScoreThrows) {
  Dataset ds(Emotion::kJoy);
  Tweet t;
  t.id = "a";
  t.text = "x";
  t.emotion = Emotion::kJoy;
  ds.add(t);
  EXPECT_THROW(gold_scores(ds), InvalidArgument);
}

}  // namespace
}  // namespace emoint
