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

// Competition metrics (Pearson and Spearman on the full test set and on the
// gold >= 0.5 subset), per-emotion and macro-averaged reports, and the
// feature-set ablation runner.

#ifndef EMOINT_EVALUATION_H_
#define EMOINT_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoint/dataset.h"
#include "emoint/features.h"
#include "emoint/submission.h"
#include "emoint/svr.h"

namespace emoint {

inline constexpr double kHighIntensityThreshold = 0.5;

struct EmotionMetrics {
  Emotion emotion = Emotion::kAnger;
  std::size_t n = 0;
  std::size_t n_ge05 = 0;
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::optional<double> pearson_ge05;
  std::optional<double> spearman_ge05;
};

struct EvalReport {
  std::vector<EmotionMetrics> per_emotion;
  std::optional<double> macro_pearson;
  std::optional<double> macro_spearman;
  std::optional<double> macro_pearson_ge05;
  std::optional<double> macro_spearman_ge05;
  std::vector<std::string> warnings;

  // Header row plus one row per emotion and a final "avg" row; absent values
  // print as "NA".
  std::string to_tsv() const;
  std::string to_table() const;
};

// Aligns predictions to gold by id. Throws InvalidArgument listing missing
// or extra ids, or gold rows without a score. Metrics that are undefined
// (constant vector, fewer than two rows in the subset) are left absent and
// noted in warnings.
EvalReport evaluate_submission(const Dataset& gold,
                               std::span<const SubmissionRow> submission);

// Evaluates several emotions and macro-averages over those present.
struct GoldAndSubmission {
  const Dataset* gold;
  std::span<const SubmissionRow> submission;
};
EvalReport evaluate_submissions(std::span<const GoldAndSubmission> pairs);

// Recomputes the macro averages from per_emotion; skipped emotions produce a
// warning.
void finalize_report(EvalReport& report);

struct EmotionSplit {
  Dataset train;
  Dataset test;
};

struct AblationRow {
  std::string label;
  std::vector<std::optional<double>> pearson;  // aligned with table emotions
  std::optional<double> average;
};

struct AblationTable {
  std::vector<Emotion> emotions;
  std::vector<AblationRow> rows;
  std::vector<std::string> warnings;

  std::string to_tsv() const;
  std::string to_table() const;
};

// For each configuration and emotion: fit features on train, train the SVR,
// predict test, and correlate with the test gold scores.
AblationTable ablation_run(std::span<const EmotionSplit> splits,
                           std::span<const FeatureConfig> configs,
                           const FeatureResources& resources,
                           const SvrOptions& svr = {});

// Gold scores of a dataset in file order; throws if any is missing.
std::vector<double> gold_scores(const Dataset& ds);

}  // namespace emoint

#endif  // EMOINT_EVALUATION_H_
