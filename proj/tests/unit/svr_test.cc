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

#include "emoint/svr.h"

#include <cmath>

#include <gtest/gtest.h>

#include "emoint/error.h"
#include "emoint/metrics.h"
#include "emoint/random.h"
#include "synthetic.h"
#include "temp_dir.h"

namespace emoint {
namespace {

using Problem = testing::RegressionProblem;

Problem make_problem(std::size_t rows, std::size_t sparse, std::size_t dense,
                     double noise, std::uint64_t seed, bool learnable = true) {
  return testing::make_regression_problem(rows, sparse, dense, noise, seed, learnable);
}

TEST(SvrGradientTest, MatchesCentralDifferences) {
  const Problem p = make_problem(40, 3, 4, 0.3, 11);
  Random rng(12);
  const double C = 2.0;
  const double eps = 0.1;
  for (int point = 0; point < 20; ++point) {
    std::vector<double> w(p.x.width());
    for (double& v : w) v = 2.0 * rng.uniform() - 1.0;
    const double b = rng.uniform() - 0.5;
    std::vector<double> gw(w.size());
    double gb = 0.0;
    svr_gradient(p.x, p.y, w, b, C, eps, gw, gb);
    const double h = 1e-6;
    auto check = [&](double analytic, double numeric) {
      const double scale = std::max(1.0, std::abs(numeric));
      EXPECT_LE(std::abs(analytic - numeric) / scale, 1e-4);
    };
    for (std::size_t j = 0; j < w.size(); ++j) {
      std::vector<double> up = w, down = w;
      up[j] += h;
      down[j] -= h;
      check(gw[j], (svr_objective(p.x, p.y, up, b, C, eps) -
                    svr_objective(p.x, p.y, down, b, C, eps)) / (2 * h));
    }
    check(gb, (svr_objective(p.x, p.y, w, b + h, C, eps) -
               svr_objective(p.x, p.y, w, b - h, C, eps)) / (2 * h));
  }
}

TEST(SvrTrainTest, ObjectiveNeverIncreases) {
  const Problem p = make_problem(200, 10, 5, 0.5, 3);
  const TrainResult r = train_svr(p.x, p.y, {.C = 10.0, .epsilon = 0.05});
  ASSERT_GE(r.objective_history.size(), 2u);
  for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
    EXPECT_LE(r.objective_history[i], r.objective_history[i - 1]);
  }
  EXPECT_TRUE(r.converged);
}

TEST(SvrTrainTest, ExactLinearDataIsFitInsideTube) {
  const Problem p = make_problem(100, 0, 3, 0.0, 5);
  const SvrOptions opt{.C = 1e6, .epsilon = 0.0, .tol = 1e-14, .max_iter = 500};
  const RegressionModel m = train(p.x, p.y, opt);
  const auto pred = predict(m, p.x);
  for (std::size_t i = 0; i < pred.size(); ++i) EXPECT_NEAR(pred[i], p.y[i], 1e-6);
}

TEST(SvrTrainTest, DuplicatedRowsEquivalentToDoubledC) {
  // Duplicating every row doubles the loss term, so C/2 on the doubled data
  // is the same problem as C on the original.
  const Problem p = make_problem(60, 4, 3, 0.4, 8);
  std::vector<std::size_t> twice;
  for (std::size_t i = 0; i < p.x.rows(); ++i) {
    twice.push_back(i);
    twice.push_back(i);
  }
  const FeatureMatrix x2 = p.x.select_rows(twice);
  std::vector<double> y2;
  for (std::size_t i : twice) y2.push_back(p.y[i]);
  const RegressionModel a = train(p.x, p.y, {.C = 4.0, .epsilon = 0.1});
  const RegressionModel b = train(x2, y2, {.C = 2.0, .epsilon = 0.1});
  const double fa = svr_objective(p.x, p.y, a.weights, a.bias, 4.0, 0.1);
  const double fb = svr_objective(p.x, p.y, b.weights, b.bias, 4.0, 0.1);
  EXPECT_NEAR(fa, fb, 1e-6 * std::max(1.0, std::abs(fa)));
}

TEST(SvrTrainTest, RejectsBadInput) {
  const Problem p = make_problem(10, 2, 2, 0.1, 1);
  std::vector<double> short_y(p.y.begin(), p.y.end() - 1);
  EXPECT_THROW(train(p.x, short_y), InvalidArgument);
  EXPECT_THROW(train(p.x, p.y, {.C = 0.0}), InvalidArgument);
  EXPECT_THROW(train(p.x, p.y, {.epsilon = -1.0}), InvalidArgument);
}

TEST(SvrModelTest, BitExactRoundTrip) {
  const Problem p = make_problem(80, 5, 4, 0.3, 21);
  RegressionModel m = train(p.x, p.y);
  m.layout_digest = p.x.layout_digest();
  testing::TempDir dir;
  save_model(m, dir.file("m.txt"));
  const RegressionModel back = load_model(dir.file("m.txt"));
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.bias, m.bias);
  EXPECT_EQ(back.C, m.C);
  EXPECT_EQ(back.epsilon, m.epsilon);
  EXPECT_EQ(format_model(back), format_model(m));
  EXPECT_EQ(predict(back, p.x), predict(m, p.x));
}

TEST(SvrModelTest, LayoutMismatchIsRejected) {
  const Problem p = make_problem(30, 2, 2, 0.3, 2);
  RegressionModel m = train(p.x, p.y);
  m.layout_digest = "0000000000000000";
  EXPECT_THROW(predict(m, p.x), Error);
  EXPECT_THROW(parse_model("emoint-svr-model 2\n"), ParseError);
}

TEST(SvrModelTest, ClampForSubmission) {
  const std::vector<double> s = {-0.2, 0.4, 1.7};
  EXPECT_EQ(clamp_for_submission(s), (std::vector<double>{0.0, 0.4, 1.0}));
}

TEST(CrossValidationTest, LearnableDataCorrelatesStrongly) {
  const Problem p = make_problem(300, 5, 6, 0.0, 31);
  const CrossValidation cv = cross_validate(p.x, p.y, 5, 9, {.C = 100.0, .epsilon = 0.0});
  ASSERT_EQ(cv.fold_pearson.size(), 5u);
  ASSERT_TRUE(cv.mean_pearson);
  EXPECT_GE(*cv.mean_pearson, 0.99);
}

TEST(CrossValidationTest, PureNoiseDoesNotCorrelate) {
  const Problem p = make_problem(500, 5, 6, 0.0, 41, /*learnable=*/false);
  const CrossValidation cv = cross_validate(p.x, p.y, 5, 9);
  ASSERT_TRUE(cv.pooled_pearson);
  EXPECT_LT(std::abs(*cv.pooled_pearson), 0.2);
}

TEST(CrossValidationTest, FoldCountValidated) {
  const Problem p = make_problem(10, 1, 1, 0.1, 1);
  EXPECT_THROW(cross_validate(p.x, p.y, 1, 0), InvalidArgument);
  EXPECT_THROW(cross_validate(p.x, p.y, 11, 0), InvalidArgument);
}

}  // namespace
}  // namespace emoint
