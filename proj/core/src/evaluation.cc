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

#include <cstdio>
#include <unordered_map>

#include "emoint/error.h"
#include "emoint/metrics.h"
#include "emoint/text.h"

namespace emoint {

namespace {

std::optional<double> try_metric(double (*metric)(std::span<const double>,
                                                  std::span<const double>),
                                 std::span<const double> a,
                                 std::span<const double> b,
                                 const std::string& what,
                                 std::vector<std::string>& warnings) {
  try {
    return metric(a, b);
  } catch (const Error& e) {
    warnings.push_back(what + " undefined: " + e.what());
    return std::nullopt;
  }
}

std::string fmt(const std::optional<double>& v, int precision = 4) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, *v);
  return buf;
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0;
  int n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ')
              : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::vector<double> gold_scores(const Dataset& ds) {
  std::vector<double> out;
  out.reserve(ds.size());
  for (const Tweet& t : ds.tweets()) {
    if (!t.gold_score) {
      throw InvalidArgument("tweet '" + t.id + "' has no gold score");
    }
    out.push_back(*t.gold_score);
  }
  return out;
}

EvalReport evaluate_submission(const Dataset& gold,
                               std::span<const SubmissionRow> submission) {
  std::unordered_map<std::string, double> predicted;
  std::vector<std::string> extra;
  for (const SubmissionRow& r : submission) {
    if (!gold.contains(r.id)) {
      extra.push_back(r.id);
    } else if (!predicted.emplace(r.id, r.score).second) {
      throw InvalidArgument("duplicate submission id '" + r.id + "'");
    }
  }
  std::vector<std::string> missing;
  for (const Tweet& t : gold.tweets()) {
    if (predicted.count(t.id) == 0) missing.push_back(t.id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "submission ids do not match gold";
    if (!missing.empty()) msg += "; missing: " + join(missing, ", ");
    if (!extra.empty()) msg += "; extra: " + join(extra, ", ");
    throw InvalidArgument(msg);
  }

  EvalReport report;
  EmotionMetrics m;
  m.emotion = gold.emotion();
  std::vector<double> g, p, g_hi, p_hi;
  for (const Tweet& t : gold.tweets()) {
    if (!t.gold_score) {
      throw InvalidArgument("gold tweet '" + t.id + "' has no score");
    }
    g.push_back(*t.gold_score);
    p.push_back(predicted.at(t.id));
    if (*t.gold_score >= kHighIntensityThreshold) {
      g_hi.push_back(*t.gold_score);
      p_hi.push_back(predicted.at(t.id));
    }
  }
  m.n = g.size();
  m.n_ge05 = g_hi.size();
  const std::string name(emotion_name(m.emotion));
  m.pearson = try_metric(pearson, g, p, name + " pearson", report.warnings);
  m.spearman = try_metric(spearman, g, p, name + " spearman", report.warnings);
  m.pearson_ge05 =
      try_metric(pearson, g_hi, p_hi, name + " pearson (gold >= 0.5)", report.warnings);
  m.spearman_ge05 = try_metric(spearman, g_hi, p_hi,
                               name + " spearman (gold >= 0.5)", report.warnings);
  report.per_emotion.push_back(m);
  finalize_report(report);
  return report;
}

EvalReport evaluate_submissions(std::span<const GoldAndSubmission> pairs) {
  EvalReport report;
  for (const GoldAndSubmission& p : pairs) {
    EvalReport one = evaluate_submission(*p.gold, p.submission);
    for (const EmotionMetrics& m : report.per_emotion) {
      if (m.emotion == one.per_emotion[0].emotion) {
        throw InvalidArgument("emotion " +
                              std::string(emotion_name(m.emotion)) +
                              " evaluated twice");
      }
    }
    report.per_emotion.push_back(one.per_emotion[0]);
    report.warnings.insert(report.warnings.end(), one.warnings.begin(),
                           one.warnings.end());
  }
  finalize_report(report);
  return report;
}

void finalize_report(EvalReport& report) {
  auto macro = [&](std::optional<double> EmotionMetrics::*field,
                   const char* name) -> std::optional<double> {
    std::vector<std::optional<double>> values;
    for (const EmotionMetrics& m : report.per_emotion) {
      values.push_back(m.*field);
      if (!(m.*field)) {
        report.warnings.push_back(std::string("macro ") + name + " skips " +
                                  std::string(emotion_name(m.emotion)));
      }
    }
    return mean_of(values);
  };
  report.macro_pearson = macro(&EmotionMetrics::pearson, "pearson");
  report.macro_spearman = macro(&EmotionMetrics::spearman, "spearman");
  report.macro_pearson_ge05 = macro(&EmotionMetrics::pearson_ge05, "pearson_ge05");
  report.macro_spearman_ge05 =
      macro(&EmotionMetrics::spearman_ge05, "spearman_ge05");
}

std::string EvalReport::to_tsv() const {
  std::string out =
      "emotion\tn\tpearson\tspearman\tn_ge05\tpearson_ge05\tspearman_ge05\n";
  for (const EmotionMetrics& m : per_emotion) {
    out += std::string(emotion_name(m.emotion)) + "\t" + std::to_string(m.n) +
           "\t" + fmt(m.pearson, 6) + "\t" + fmt(m.spearman, 6) + "\t" +
           std::to_string(m.n_ge05) + "\t" + fmt(m.pearson_ge05, 6) + "\t" +
           fmt(m.spearman_ge05, 6) + "\n";
  }
  out += "avg\t\t" + fmt(macro_pearson, 6) + "\t" + fmt(macro_spearman, 6) +
         "\t\t" + fmt(macro_pearson_ge05, 6) + "\t" +
         fmt(macro_spearman_ge05, 6) + "\n";
  return out;
}

std::string EvalReport::to_table() const {
  std::string out = pad("emotion", 9, true) + pad("n", 6) + pad("pearson", 10) +
                    pad("spearman", 10) + pad("n>=0.5", 8) + pad("r>=0.5", 10) +
                    pad("rho>=0.5", 10) + "\n";
  for (const EmotionMetrics& m : per_emotion) {
    out += pad(std::string(emotion_name(m.emotion)), 9, true) +
           pad(std::to_string(m.n), 6) + pad(fmt(m.pearson), 10) +
           pad(fmt(m.spearman), 10) + pad(std::to_string(m.n_ge05), 8) +
           pad(fmt(m.pearson_ge05), 10) + pad(fmt(m.spearman_ge05), 10) + "\n";
  }
  out += pad("avg", 9, true) + pad("", 6) + pad(fmt(macro_pearson), 10) +
         pad(fmt(macro_spearman), 10) + pad("", 8) +
         pad(fmt(macro_pearson_ge05), 10) + pad(fmt(macro_spearman_ge05), 10) +
         "\n";
  return out;
}

AblationTable ablation_run(std::span<const EmotionSplit> splits,
                           std::span<const FeatureConfig> configs,
                           const FeatureResources& resources,
                           const SvrOptions& svr) {
  AblationTable table;
  for (const EmotionSplit& s : splits) table.emotions.push_back(s.train.emotion());
  for (const FeatureConfig& config : configs) {
    AblationRow row;
    row.label = config.blocks.label();
    for (const EmotionSplit& s : splits) {
      FeatureExtractor fx(config, resources);
      const FeatureMatrix train_x = fx.fit_transform(s.train);
      const std::vector<double> train_y = gold_scores(s.train);
      const RegressionModel model = train(train_x, train_y, svr);
      const std::vector<double> pred = predict(model, fx.transform(s.test));
      const std::vector<double> test_y = gold_scores(s.test);
      row.pearson.push_back(try_metric(
          pearson, test_y, pred,
          row.label + " " + std::string(emotion_name(s.train.emotion())),
          table.warnings));
    }
    row.average = mean_of(row.pearson);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string AblationTable::to_tsv() const {
  std::string out = "features";
  for (Emotion e : emotions) out += "\t" + std::string(emotion_name(e));
  out += "\tavg\n";
  for (const AblationRow& row : rows) {
    out += row.label;
    for (const auto& v : row.pearson) out += "\t" + fmt(v, 6);
    out += "\t" + fmt(row.average, 6) + "\n";
  }
  return out;
}

std::string AblationTable::to_table() const {
  std::size_t label_width = 8;
  for (const AblationRow& row : rows) {
    label_width = std::max(label_width, row.label.size());
  }
  std::string out = pad("features", label_width + 2, true);
  for (Emotion e : emotions) out += pad(std::string(emotion_name(e)), 9);
  out += pad("avg", 9) + "\n";
  for (const AblationRow& row : rows) {
    out += pad(row.label, label_width + 2, true);
    for (const auto& v : row.pearson) out += pad(fmt(v, 2), 9);
    out += pad(fmt(row.average, 2), 9) + "\n";
  }
  return out;
}

}  // namespace emoint
