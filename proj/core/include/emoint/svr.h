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

// L2-regularized L2-loss support vector regression.
//
// Minimizes
//   f(w, b) = 1/2 |w|^2 + C * sum_i max(0, |w.x_i + b - y_i| - eps)^2
// with an unregularized intercept b. The loss is once continuously
// differentiable, so the solver takes generalized Newton steps (conjugate
// gradient on the generalized Hessian) with a backtracking line search; every
// accepted step decreases f.

#ifndef EMOINT_SVR_H_
#define EMOINT_SVR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoint/feature_matrix.h"

namespace emoint {

struct SvrOptions {
  double C = 1.0;
  double epsilon = 0.1;
  // Stops when an iteration lowers f by less than tol * max(1, |f|), or the
  // gradient norm falls below tol * max(1, |grad f(0)|).
  double tol = 1e-12;
  int max_iter = 200;
};

struct RegressionModel {
  std::vector<double> weights;
  double bias = 0.0;
  double C = 1.0;
  double epsilon = 0.1;
  std::string layout_digest;
};

struct TrainResult {
  RegressionModel model;
  std::vector<double> objective_history;  // f before the first step, then per iteration
  int iterations = 0;
  bool converged = false;
};

// Requires rows >= 2, rows == y.size(), finite features and targets, C > 0,
// epsilon >= 0. Deterministic.
TrainResult train_svr(const FeatureMatrix& x, std::span<const double> y,
                      const SvrOptions& options = {});

inline RegressionModel train(const FeatureMatrix& x, std::span<const double> y,
                             const SvrOptions& options = {}) {
  return train_svr(x, y, options).model;
}

double svr_objective(const FeatureMatrix& x, std::span<const double> y,
                     std::span<const double> weights, double bias, double C,
                     double epsilon);

// Gradient of svr_objective; the loss derivative is 0 inside the tube.
void svr_gradient(const FeatureMatrix& x, std::span<const double> y,
                  std::span<const double> weights, double bias, double C,
                  double epsilon, std::span<double> grad_weights,
                  double& grad_bias);

// Raw w.x + b per row. Throws InvalidArgument on a layout digest mismatch.
std::vector<double> predict(const RegressionModel& model, const FeatureMatrix& x);

std::vector<double> clamp_for_submission(std::span<const double> scores);

struct CrossValidation {
  std::vector<std::optional<double>> fold_pearson;  // absent for degenerate folds
  std::optional<double> mean_pearson;               // over non-degenerate folds
  std::optional<double> pooled_pearson;             // over all out-of-fold predictions
  std::vector<std::string> warnings;
};

// Shuffled fold assignment from `seed`; fold f holds shuffled positions
// p with p % folds == f.
CrossValidation cross_validate(const FeatureMatrix& x, std::span<const double> y,
                               int folds, std::uint64_t seed,
                               const SvrOptions& options = {});

// Text format; doubles are written in shortest round-trip form so a
// save/load cycle reproduces the model bit for bit.
std::string format_model(const RegressionModel& model);
RegressionModel parse_model(std::string_view text,
                            const std::string& source = "<model>");
void save_model(const RegressionModel& model, const std::string& path);
RegressionModel load_model(const std::string& path);

}  // namespace emoint

#endif  // EMOINT_SVR_H_
