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

// emoint: command-line front end. Results go to stdout (or --out), messages
// to stderr. Exit status 0 on success, 1 when an operation fails, 2 on a
// usage error.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emoint/annotation_service.h"
#include "emoint/bws.h"
#include "emoint/dataset.h"
#include "emoint/evaluation.h"
#include "emoint/features.h"
#include "emoint/resources.h"
#include "emoint/submission.h"
#include "emoint/svr.h"
#include "emoint/text.h"
#include "emoint/tuples.h"

namespace fs = std::filesystem;
using namespace emoint;

namespace {

// Operation failed for a reason that has already been reported.
struct Failed {};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

Emotion emotion_arg(const std::string& name) {
  const auto e = parse_emotion(name);
  if (!e) throw InvalidArgument("unknown emotion '" + name + "'");
  return *e;
}

// Feature flags shared by features, train, predict and ablate.
struct FeatureArgs {
  std::string blocks = "WE+L";
  std::vector<std::string> lexicons;
  std::string embeddings;
  std::string negators;
  std::string scheme = "average";
  bool no_negation = false;

  void add_to(CLI::App* app, bool with_blocks = true) {
    if (with_blocks) {
      app->add_option("--features", blocks,
                      "Feature blocks, e.g. WN+CN or WE+L")->capture_default_str();
    }
    app->add_option("--lexicon", lexicons, "Lexicon TSV (repeatable)");
    app->add_option("--embeddings", embeddings, "Word embedding text file");
    app->add_option("--negators", negators, "Negator list, one word per line");
    app->add_option("--scheme", scheme, "average | add | concat:K")
        ->capture_default_str();
    app->add_flag("--no-negation", no_negation, "Disable NEG- marking");
  }

  FeatureResources resources() const {
    FeatureResources r;
    if (!embeddings.empty()) {
      r.embeddings = std::make_shared<const EmbeddingTable>(
          EmbeddingTable::load(embeddings));
    }
    for (const std::string& path : lexicons) r.lexicons.push_back(Lexicon::load(path));
    if (!negators.empty()) r.negators = read_negators(negators);
    return r;
  }

  FeatureConfig config(const std::string& block_spec) const {
    FeatureConfig c;
    const auto b = parse_feature_blocks(block_spec);
    if (!b) throw InvalidArgument("bad feature block list '" + block_spec + "'");
    c.blocks = *b;
    const auto s = parse_embedding_scheme(scheme);
    if (!s) throw InvalidArgument("bad embedding scheme '" + scheme + "'");
    c.embedding_scheme = *s;
    c.negation = !no_negation;
    return c;
  }
  FeatureConfig config() const { return config(blocks); }
};

SvrOptions svr_args_default() { return SvrOptions{}; }

void add_svr_options(CLI::App* app, SvrOptions& o) {
  app->add_option("--C", o.C, "SVR cost parameter")->capture_default_str();
  app->add_option("--epsilon", o.epsilon, "SVR tube width")->capture_default_str();
  app->add_option("--tol", o.tol, "Solver tolerance")->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "Solver iteration cap")
      ->capture_default_str();
}

std::string layout_path_for(const std::string& model_path) {
  return model_path + ".layout";
}

// ---------------------------------------------------------------- tuples

void tuples_gen(const std::string& items_path, const std::string& corpus_path,
                std::optional<std::uint64_t> seed, int max_restarts,
                const std::string& out) {
  std::vector<std::string> items;
  if (!items_path.empty()) {
    items = read_item_list(items_path);
  } else {
    for (const Tweet& t : parse_corpus(corpus_path, false).tweets()) {
      items.push_back(t.id);
    }
  }
  const TupleSet ts = generate_tuples(items, resolve_seed(seed), max_restarts);
  emit(out, format_tuples(ts));
}

void tuples_check(const std::string& tuples_path, const std::string& items_path) {
  TupleSet ts = read_tuples(tuples_path);
  if (!items_path.empty()) ts.items = read_item_list(items_path);
  const auto violations = validate_tuple_set(ts);
  for (const TupleViolation& v : violations) std::cout << v.message << "\n";
  if (!violations.empty()) {
    std::cerr << violations.size() << " violation(s)\n";
    throw Failed{};
  }
  std::cerr << "ok: " << ts.tuples.size() << " tuples over " << ts.items.size()
            << " items\n";
}

// ------------------------------------------------------- strip / split

void strip_hashtags(const std::string& corpus_path, const std::string& queries,
                    const std::string& out, const std::string& pairs_out) {
  const Dataset ds = parse_corpus(corpus_path, false);
  const std::set<std::string> terms = read_query_terms(queries);
  Dataset result(ds.emotion());
  std::vector<Tweet> copies;
  PairList pairs;
  for (const Tweet& t : ds.tweets()) {
    result.add(t);
    if (auto copy = strip_trailing_hashtag_query(t, terms)) {
      pairs.emplace_back(copy->id, t.id);
      copies.push_back(std::move(*copy));
    }
  }
  for (Tweet& c : copies) result.add(std::move(c));
  emit(out, format_corpus(result));
  if (!pairs_out.empty()) write_pairs(pairs, pairs_out);
  std::cerr << copies.size() << " NQT copies\n";
}

void split_cmd(const std::string& corpus_path, const std::string& pairs_path,
               std::vector<double> fractions, std::optional<std::uint64_t> seed,
               const std::string& out_dir) {
  Dataset ds = parse_corpus(corpus_path, false);
  if (!pairs_path.empty()) ds = attach_pairs(ds, read_pairs(pairs_path));
  if (fractions.size() != 3) throw InvalidArgument("--fractions needs 3 values");
  const Partition p = partition_dataset(
      ds, {fractions[0], fractions[1], fractions[2]}, resolve_seed(seed));
  fs::create_directories(out_dir);
  write_corpus(p.train, (fs::path(out_dir) / "train.tsv").string());
  write_corpus(p.dev, (fs::path(out_dir) / "dev.tsv").string());
  write_corpus(p.test, (fs::path(out_dir) / "test.tsv").string());
  std::cout << "train\t" << p.train.size() << "\ndev\t" << p.dev.size()
            << "\ntest\t" << p.test.size() << "\n";
}

// ------------------------------------------------------------ scoring

void score_cmd(const std::string& tuples_path, const std::string& responses_path,
               const std::string& corpus_path, const std::string& emotion,
               bool include_gold, const std::string& out) {
  const TupleSet ts = read_tuples(tuples_path);
  const auto responses = read_responses(responses_path);
  std::optional<Dataset> corpus;
  if (!corpus_path.empty()) corpus = parse_corpus(corpus_path, false);
  const Emotion e = !emotion.empty() ? emotion_arg(emotion)
                    : corpus         ? corpus->emotion()
                                     : Emotion::kAnger;
  const ScoreTable table = compute_scores(ts, responses, e, {include_gold});
  if (corpus || !emotion.empty()) {
    emit(out, format_corpus(scores_to_dataset(table, corpus ? &*corpus : nullptr)));
    return;
  }
  std::string text = "item\tbest\tworst\tjudgments\traw\tscore\n";
  for (const auto& [id, s] : table.entries) {
    text += id + "\t" + std::to_string(s.best) + "\t" + std::to_string(s.worst) +
            "\t" + std::to_string(s.judgments) + "\t" + format_double(s.raw) +
            "\t" + format_double(s.scaled) + "\n";
  }
  emit(out, text);
}

void shr_cmd(const std::string& tuples_path, const std::string& responses_path,
             int iterations, std::optional<std::uint64_t> seed, bool include_gold) {
  const TupleSet ts = read_tuples(tuples_path);
  const auto responses = read_responses(responses_path);
  const Reliability r = split_half_reliability(ts, responses, iterations,
                                               resolve_seed(seed), {include_gold});
  std::cout << "pearson\tspearman\titerations\n"
            << format_double(r.pearson) << "\t" << format_double(r.spearman)
            << "\t" << r.iterations << "\n";
}

// ----------------------------------------------------------- features

std::string format_matrix(const Dataset& ds, const FeatureMatrix& x) {
  std::string out;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out += ds.tweets()[i].id;
    for (const auto& [col, value] : x.sparse_row(i)) {
      out += "\t" + std::to_string(col) + ":" + format_double(value);
    }
    const auto dense = x.dense_row(i);
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (dense[j] == 0.0) continue;
      out += "\t" + std::to_string(x.sparse_width() + j) + ":" +
             format_double(dense[j]);
    }
    out += "\n";
  }
  return out;
}

void features_cmd(const FeatureArgs& fa, const std::string& train_path,
                  const std::string& data_path, const std::string& layout_out,
                  const std::string& out) {
  const Dataset train = parse_corpus(train_path, false);
  FeatureExtractor fx(fa.config(), fa.resources());
  fx.fit(train);
  const Dataset data = data_path.empty() ? train : parse_corpus(data_path, false);
  const FeatureMatrix x = fx.transform(data);
  if (!layout_out.empty()) fx.save_layout(layout_out);
  emit(out, format_matrix(data, x));
  std::cerr << x.rows() << " rows, " << x.width() << " columns, layout "
            << x.layout_digest() << "\n";
}

// -------------------------------------------------- train / predict

void train_cmd(const FeatureArgs& fa, const SvrOptions& svr,
               const std::string& train_path, const std::string& model_path,
               int cv_folds, std::optional<std::uint64_t> seed) {
  const Dataset train = parse_corpus(train_path, true);
  FeatureExtractor fx(fa.config(), fa.resources());
  const FeatureMatrix x = fx.fit_transform(train);
  const std::vector<double> y = gold_scores(train);
  if (cv_folds > 0) {
    const CrossValidation cv = cross_validate(x, y, cv_folds, resolve_seed(seed), svr);
    for (const std::string& w : cv.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "fold\tpearson\n";
    for (std::size_t f = 0; f < cv.fold_pearson.size(); ++f) {
      std::cout << f << "\t"
                << (cv.fold_pearson[f] ? format_double(*cv.fold_pearson[f]) : "NA")
                << "\n";
    }
    std::cout << "mean\t"
              << (cv.mean_pearson ? format_double(*cv.mean_pearson) : "NA") << "\n";
  }
  const TrainResult r = train_svr(x, y, svr);
  if (!r.converged) {
    std::cerr << "warning: solver stopped after " << r.iterations
              << " iterations without meeting the tolerance\n";
  }
  save_model(r.model, model_path);
  fx.save_layout(layout_path_for(model_path));
  std::cerr << "trained on " << x.rows() << " rows, " << x.width()
            << " columns; objective " << format_double(r.objective_history.back())
            << "\n";
}

void predict_cmd(const FeatureArgs& fa, const std::string& model_path,
                 const std::string& layout_path, const std::string& data_path,
                 const std::string& out) {
  const RegressionModel model = load_model(model_path);
  const FeatureExtractor fx = FeatureExtractor::load_layout(
      layout_path.empty() ? layout_path_for(model_path) : layout_path,
      fa.resources());
  const Dataset data = parse_corpus(data_path, false);
  const std::vector<double> scores =
      clamp_for_submission(predict(model, fx.transform(data)));
  std::vector<SubmissionRow> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Tweet& t = data.tweets()[i];
    rows.push_back({t.id, t.text, t.emotion, scores[i]});
  }
  emit(out, format_submission(rows));
}

// ---------------------------------------------------------- evaluation

bool check_format_cmd(const std::string& gold_path, const std::string& sub_path) {
  const Dataset gold = parse_corpus(gold_path, true);
  const FormatReport report = check_submission_format(sub_path, gold);
  if (!report.passed()) {
    std::cerr << report.to_string();
    return false;
  }
  std::cerr << sub_path << ": format ok (" << report.rows << " rows)\n";
  return true;
}

void eval_cmd(const std::vector<std::string>& golds,
              const std::vector<std::string>& subs, bool table) {
  if (golds.size() != subs.size()) {
    throw InvalidArgument("--gold and --sub must be given the same number of times");
  }
  bool ok = true;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    ok = check_format_cmd(golds[i], subs[i]) && ok;
  }
  if (!ok) throw Failed{};
  std::vector<Dataset> gold_sets;
  std::vector<std::vector<SubmissionRow>> sub_sets;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    gold_sets.push_back(parse_corpus(golds[i], true));
    sub_sets.push_back(read_submission(subs[i]));
  }
  std::vector<GoldAndSubmission> pairs;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    pairs.push_back({&gold_sets[i], sub_sets[i]});
  }
  const EvalReport report = evaluate_submissions(pairs);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << (table ? report.to_table() : report.to_tsv());
}

void ablate_cmd(const FeatureArgs& fa, const SvrOptions& svr,
                const std::vector<std::string>& trains,
                const std::vector<std::string>& tests,
                std::vector<std::string> configs, bool table) {
  if (trains.size() != tests.size() || trains.empty()) {
    throw InvalidArgument("give --train and --test the same, nonzero number of times");
  }
  if (configs.empty()) configs = {"WN", "CN", "WE", "L", "WN+CN", "WE+L", "WN+CN+WE+L"};
  std::vector<EmotionSplit> splits;
  for (std::size_t i = 0; i < trains.size(); ++i) {
    splits.push_back({parse_corpus(trains[i], true), parse_corpus(tests[i], true)});
  }
  std::vector<FeatureConfig> fcs;
  for (const std::string& c : configs) fcs.push_back(fa.config(c));
  const AblationTable result = ablation_run(splits, fcs, fa.resources(), svr);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << (table ? result.to_table() : result.to_tsv());
}

// --------------------------------------------------------------- serve

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

void serve_cmd(const std::string& host, int port, const std::string& log_path,
               const std::string& static_dir, const std::string& admin_token,
               const std::string& task_id, const std::string& corpus_path,
               const std::string& tuples_path, const std::string& gold_path,
               const TaskConfig& config, std::optional<std::uint64_t> seed) {
  AnnotationService service({log_path, {}, {}});
  if (!corpus_path.empty() || !tuples_path.empty()) {
    if (corpus_path.empty() || tuples_path.empty()) {
      throw InvalidArgument("--corpus and --tuples go together");
    }
    if (!task_id.empty() && service.has_task(task_id)) {
      std::cerr << "task " << task_id << " restored from the log\n";
    } else {
      TaskDefinition def;
      def.task_id = task_id;
      const Dataset corpus = parse_corpus(corpus_path, false);
      def.emotion = corpus.emotion();
      for (const Tweet& t : corpus.tweets()) def.item_text[t.id] = t.text;
      def.tuples = read_tuples(tuples_path);
      if (!gold_path.empty()) def.gold_keys = read_gold_keys(gold_path);
      def.config = config;
      def.config.seed = resolve_seed(seed);
      std::cerr << "created task " << service.create_task(std::move(def)) << "\n";
    }
  }
  HttpServer server(service, {static_dir, admin_token});
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    g_server = nullptr;
    throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  }
  g_server = nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emoint: emotion intensity annotation, scoring and regression"};
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out;
  std::function<void()> action;

  // tuples
  auto* tuples = app.add_subcommand("tuples", "Generate or check 4-tuple designs");
  tuples->require_subcommand(1);
  std::string items_path, corpus_path, tuples_path;
  int max_restarts = 20;
  auto* gen = tuples->add_subcommand("gen", "Generate 2N 4-tuples");
  auto* items_opt = gen->add_option("--items", items_path, "Item ids, one per line");
  gen->add_option("--corpus", corpus_path, "Take item ids from a corpus TSV")
      ->excludes(items_opt);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--max-restarts", max_restarts, "Search restarts")
      ->capture_default_str();
  gen->add_option("--out", out, "Output tuple file (default stdout)");
  gen->callback([&] {
    if (items_path.empty() && corpus_path.empty()) {
      throw CLI::RequiredError("--items or --corpus");
    }
    action = [&] { tuples_gen(items_path, corpus_path, seed, max_restarts, out); };
  });
  auto* check = tuples->add_subcommand("check", "Validate a tuple file");
  check->add_option("--tuples", tuples_path, "Tuple file")->required();
  check->add_option("--items", items_path, "Expected item universe");
  check->callback([&] { action = [&] { tuples_check(tuples_path, items_path); }; });

  // strip-hashtags
  std::string queries, pairs_path;
  auto* strip = app.add_subcommand("strip-hashtags",
                                   "Add hashtag-stripped copies of query-tagged tweets");
  strip->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  strip->add_option("--queries", queries, "Query terms, one per line")->required();
  strip->add_option("--out", out, "Output corpus (default stdout)");
  strip->add_option("--pairs-out", pairs_path, "Write nqt_id<TAB>hqt_id pairs");
  strip->callback([&] {
    action = [&] { strip_hashtags(corpus_path, queries, out, pairs_path); };
  });

  // split
  std::vector<double> fractions = {0.5, 0.05, 0.45};
  std::string out_dir;
  auto* split_app = app.add_subcommand("split", "Partition a corpus into train/dev/test");
  split_app->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  split_app->add_option("--pairs", pairs_path, "Pair file keeping HQT/NQT together");
  split_app->add_option("--fractions", fractions, "train dev test")
      ->expected(3)->capture_default_str();
  split_app->add_option("--seed", seed, "Random seed");
  split_app->add_option("--out-dir", out_dir, "Directory for train/dev/test.tsv")
      ->required();
  split_app->callback([&] {
    action = [&] { split_cmd(corpus_path, pairs_path, fractions, seed, out_dir); };
  });

  // serve
  std::string host = "127.0.0.1", log_path, static_dir, admin_token, task_id,
              gold_path;
  int port = 8080;
  TaskConfig task_config;
  double ttl_seconds = task_config.assignment_ttl_ms / 1000.0;
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--log", log_path, "Event log (replayed on start)");
  serve->add_option("--static", static_dir, "Static UI directory mounted at /");
  serve->add_option("--admin-token", admin_token, "Bearer token for admin routes");
  serve->add_option("--task-id", task_id, "Id of the task created at start");
  serve->add_option("--corpus", corpus_path, "Corpus for a task created at start");
  serve->add_option("--tuples", tuples_path, "Tuple file for that task");
  serve->add_option("--gold-keys", gold_path, "Gold-key TSV for that task");
  serve->add_option("--target", task_config.target_responses_per_tuple,
                    "Responses per tuple")->capture_default_str();
  serve->add_option("--gold-rate", task_config.gold_rate)->capture_default_str();
  serve->add_option("--min-gold", task_config.min_gold_before_lockout,
                    "Gold answers before lockout can apply")->capture_default_str();
  serve->add_option("--min-accuracy", task_config.min_accuracy)->capture_default_str();
  serve->add_option("--ttl", ttl_seconds, "Assignment lifetime in seconds (0: none)")
      ->capture_default_str();
  serve->add_option("--seed", seed, "Assignment seed for the created task");
  serve->callback([&] {
    action = [&] {
      task_config.assignment_ttl_ms = static_cast<std::int64_t>(ttl_seconds * 1000);
      serve_cmd(host, port, log_path, static_dir, admin_token, task_id, corpus_path,
                tuples_path, gold_path, task_config, seed);
    };
  });

  // score
  std::string responses_path, emotion;
  bool include_gold = false;
  auto* score = app.add_subcommand("score", "Best-worst counting scores");
  score->add_option("--tuples", tuples_path, "Tuple file")->required();
  score->add_option("--responses", responses_path, "Response CSV")->required();
  score->add_option("--corpus", corpus_path, "Corpus supplying texts and emotion");
  score->add_option("--emotion", emotion, "Emotion for gold-format output");
  score->add_flag("--include-gold", include_gold, "Count gold-question responses");
  score->add_option("--out", out, "Output file (default stdout)");
  score->callback([&] {
    action = [&] {
      score_cmd(tuples_path, responses_path, corpus_path, emotion, include_gold, out);
    };
  });

  // shr
  int iterations = 100;
  auto* shr = app.add_subcommand("shr", "Split-half reliability");
  shr->add_option("--tuples", tuples_path, "Tuple file")->required();
  shr->add_option("--responses", responses_path, "Response CSV")->required();
  shr->add_option("--iterations", iterations)->capture_default_str();
  shr->add_option("--seed", seed, "Random seed");
  shr->add_flag("--include-gold", include_gold, "Count gold-question responses");
  shr->callback([&] {
    action = [&] { shr_cmd(tuples_path, responses_path, iterations, seed, include_gold); };
  });

  // features
  FeatureArgs fa;
  std::string train_path, data_path, layout_path;
  auto* features = app.add_subcommand("features", "Extract a feature matrix");
  fa.add_to(features);
  features->add_option("--train", train_path, "Corpus the vocabulary is fit on")
      ->required();
  features->add_option("--data", data_path, "Corpus to transform (default: train)");
  features->add_option("--layout-out", layout_path, "Write the feature layout");
  features->add_option("--out", out, "Output file (default stdout)");
  features->callback([&] {
    action = [&] { features_cmd(fa, train_path, data_path, layout_path, out); };
  });

  // train
  SvrOptions svr = svr_args_default();
  std::string model_path;
  int cv_folds = 0;
  auto* train_app = app.add_subcommand("train", "Train the SVR regressor");
  fa.add_to(train_app);
  add_svr_options(train_app, svr);
  train_app->add_option("--train", train_path, "Training corpus with gold scores")
      ->required();
  train_app->add_option("--model", model_path,
                        "Model output; the layout goes to <model>.layout")
      ->required();
  train_app->add_option("--cv", cv_folds, "Also report k-fold cross-validation");
  train_app->add_option("--seed", seed, "Fold assignment seed (with --cv)");
  train_app->callback([&] {
    action = [&] { train_cmd(fa, svr, train_path, model_path, cv_folds, seed); };
  });

  // predict
  auto* predict_app = app.add_subcommand("predict", "Score a corpus with a model");
  fa.add_to(predict_app, false);
  predict_app->add_option("--model", model_path, "Model file")->required();
  predict_app->add_option("--layout", layout_path, "Layout (default <model>.layout)");
  predict_app->add_option("--data", data_path, "Corpus to score")->required();
  predict_app->add_option("--out", out, "Submission output (default stdout)");
  predict_app->callback([&] {
    action = [&] { predict_cmd(fa, model_path, layout_path, data_path, out); };
  });

  // eval
  std::vector<std::string> golds, subs;
  bool table = false;
  auto* eval = app.add_subcommand("eval", "Pearson/Spearman evaluation");
  eval->add_option("--gold", golds, "Gold TSV (repeatable)")->required();
  eval->add_option("--sub", subs, "Submission TSV, paired with --gold")->required();
  eval->add_flag("--table", table, "Aligned text instead of TSV");
  eval->callback([&] { action = [&] { eval_cmd(golds, subs, table); }; });

  // ablate
  std::vector<std::string> trains, tests, configs;
  auto* ablate = app.add_subcommand("ablate", "Feature-set ablation");
  fa.add_to(ablate, false);
  add_svr_options(ablate, svr);
  ablate->add_option("--train", trains, "Training corpus per emotion")->required();
  ablate->add_option("--test", tests, "Test corpus, paired with --train")->required();
  ablate->add_option("--set", configs, "Feature set, e.g. WE+L (repeatable)");
  ablate->add_flag("--table", table, "Aligned text instead of TSV");
  ablate->callback([&] {
    action = [&] { ablate_cmd(fa, svr, trains, tests, configs, table); };
  });

  // check-format
  std::string gold_file, sub_file;
  auto* check_format = app.add_subcommand("check-format", "Validate a submission file");
  check_format->add_option("--gold", gold_file, "Gold TSV")->required();
  check_format->add_option("--sub", sub_file, "Submission TSV")->required();
  check_format->callback([&] {
    action = [&] {
      if (!check_format_cmd(gold_file, sub_file)) throw Failed{};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
  } catch (const Failed&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
