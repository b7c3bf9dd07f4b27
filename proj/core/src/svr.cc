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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emoint/error.h"
#include "emoint/metrics.h"
#include "emoint/random.h"
#include "emoint/text.h"

namespace emoint {

namespace {

double loss(double r, double eps) {
  const double excess = std::abs(r) - eps;
  return excess > 0 ? excess * excess : 0.0;
}

double loss_derivative(double r, double eps) {
  const double excess = std::abs(r) - eps;
  if (excess <= 0) return 0.0;
  return r > 0 ? 2.0 * excess : -2.0 * excess;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_training_inputs(const FeatureMatrix& x, std::span<const double> y,
                           const SvrOptions& options) {
  if (x.rows() == 0 || x.width() == 0) {
    throw InvalidArgument("cannot train on an empty feature matrix");
  }
  if (x.rows() != y.size()) {
    throw InvalidArgument("feature matrix has " + std::to_string(x.rows()) +
                          " rows but there are " + std::to_string(y.size()) +
                          " targets");
  }
  if (x.rows() < 2) throw InvalidArgument("training needs at least 2 rows");
  if (!x.all_finite()) throw InvalidArgument("non-finite feature value");
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite target value");
  }
  if (!(options.C > 0) || !std::isfinite(options.C)) {
    throw InvalidArgument("C must be positive");
  }
  if (!(options.epsilon >= 0) || !std::isfinite(options.epsilon)) {
    throw InvalidArgument("epsilon must be non-negative");
  }
}

double objective_from_residuals(std::span<const double> w,
                                std::span<const double> residuals, double C,
                                double eps) {
  double s = 0;
  for (double r : residuals) s += loss(r, eps);
  return 0.5 * dot(w, w) + C * s;
}

}  // namespace

double svr_objective(const FeatureMatrix& x, std::span<const double> y,
                     std::span<const double> weights, double bias, double C,
                     double epsilon) {
  std::vector<double> residuals(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    residuals[i] = x.dot(i, weights) + bias - y[i];
  }
  return objective_from_residuals(weights, residuals, C, epsilon);
}

void svr_gradient(const FeatureMatrix& x, std::span<const double> y,
                  std::span<const double> weights, double bias, double C,
                  double epsilon, std::span<double> grad_weights,
                  double& grad_bias) {
  std::copy(weights.begin(), weights.end(), grad_weights.begin());
  grad_bias = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double d = loss_derivative(x.dot(i, weights) + bias - y[i], epsilon);
    if (d == 0) continue;
    x.axpy(i, C * d, grad_weights);
    grad_bias += C * d;
  }
}

TrainResult train_svr(const FeatureMatrix& x, std::span<const double> y,
                      const SvrOptions& options) {
  check_training_inputs(x, y, options);
  const std::size_t n = x.rows();
  const std::size_t d = x.width();
  const double C = options.C;
  const double eps = options.epsilon;

  TrainResult result;
  RegressionModel& model = result.model;
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  model.C = C;
  model.epsilon = eps;
  model.layout_digest = x.layout_digest();
  std::vector<double>& w = model.weights;
  double& b = model.bias;

  std::vector<double> residuals(n);
  for (std::size_t i = 0; i < n; ++i) residuals[i] = -y[i];
  double f = objective_from_residuals(w, residuals, C, eps);
  result.objective_history.push_back(f);

  std::vector<double> gw(d), dw(d), rw(d), pw(d), hw(d), xd(n);
  std::vector<char> active(n);
  double gnorm0 = -1;

  auto hessian_product = [&](std::span<const double> vw, double vb,
                             std::span<double> out_w, double& out_b) {
    std::copy(vw.begin(), vw.end(), out_w.begin());
    out_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const double s = 2.0 * C * (x.dot(i, vw) + vb);
      x.axpy(i, s, out_w);
      out_b += s;
    }
  };

  for (int iter = 0; iter < options.max_iter; ++iter) {
    // Gradient at the current point.
    std::copy(w.begin(), w.end(), gw.begin());
    double gb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ld = loss_derivative(residuals[i], eps);
      active[i] = ld != 0;
      if (ld == 0) continue;
      x.axpy(i, C * ld, gw);
      gb += C * ld;
    }
    const double gnorm = std::sqrt(dot(gw, gw) + gb * gb);
    if (gnorm0 < 0) gnorm0 = gnorm;
    if (gnorm <= options.tol * std::max(1.0, gnorm0)) {
      result.converged = true;
      break;
    }

    // Truncated conjugate gradient on H d = -g.
    const double eta = std::min(0.1, std::sqrt(gnorm / std::max(1.0, gnorm0)));
    std::fill(dw.begin(), dw.end(), 0.0);
    double db = 0;
    for (std::size_t k = 0; k < d; ++k) rw[k] = -gw[k];
    double rb = -gb;
    std::copy(rw.begin(), rw.end(), pw.begin());
    double pb = rb;
    double rr = dot(rw, rw) + rb * rb;
    const int max_cg = static_cast<int>(std::min<std::size_t>(d + 1, 500));
    for (int k = 0; k < max_cg; ++k) {
      double hb = 0;
      hessian_product(pw, pb, hw, hb);
      const double php = dot(pw, hw) + pb * hb;
      if (!(php > 0)) break;
      const double alpha = rr / php;
      for (std::size_t j = 0; j < d; ++j) {
        dw[j] += alpha * pw[j];
        rw[j] -= alpha * hw[j];
      }
      db += alpha * pb;
      rb -= alpha * hb;
      const double rr_new = dot(rw, rw) + rb * rb;
      if (std::sqrt(rr_new) <= eta * gnorm) break;
      const double beta = rr_new / rr;
      for (std::size_t j = 0; j < d; ++j) pw[j] = rw[j] + beta * pw[j];
      pb = rb + beta * pb;
      rr = rr_new;
    }
    double slope = dot(gw, dw) + gb * db;
    if (!(slope < 0)) {
      for (std::size_t j = 0; j < d; ++j) dw[j] = -gw[j];
      db = -gb;
      slope = -gnorm * gnorm;
    }

    // Backtracking line search along (dw, db).
    for (std::size_t i = 0; i < n; ++i) xd[i] = x.dot(i, dw) + db;
    const double ww = dot(w, w);
    const double wd = dot(w, dw);
    const double dd = dot(dw, dw);
    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    while (step > 1e-16) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += loss(residuals[i] + step * xd[i], eps);
      f_new = 0.5 * (ww + 2 * step * wd + step * step * dd) + C * s;
      if (f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || !(f_new < f)) {
      result.converged = true;
      break;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] += step * dw[j];
    b += step * db;
    for (std::size_t i = 0; i < n; ++i) residuals[i] = x.dot(i, w) + b - y[i];
    // Recompute from the updated point to avoid drift from the expansion.
    f_new = objective_from_residuals(w, residuals, C, eps);
    if (f_new > f) {
      // Rounding made the expanded and direct evaluations disagree; undo.
      for (std::size_t j = 0; j < d; ++j) w[j] -= step * dw[j];
      b -= step * db;
      for (std::size_t i = 0; i < n; ++i) residuals[i] = x.dot(i, w) + b - y[i];
      result.converged = true;
      break;
    }
    const double decrease = f - f_new;
    f = f_new;
    result.objective_history.push_back(f);
    result.iterations = iter + 1;
    if (decrease <= options.tol * std::max(1.0, std::abs(f))) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<double> predict(const RegressionModel& model, const FeatureMatrix& x) {
  if (x.layout_digest() != model.layout_digest ||
      x.width() != model.weights.size()) {
    throw InvalidArgument("feature layout " + x.layout_digest() +
                          " does not match the model's layout " +
                          model.layout_digest);
  }
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out[i] = x.dot(i, model.weights) + model.bias;
  }
  return out;
}

std::vector<double> clamp_for_submission(std::span<const double> scores) {
  std::vector<double> out(scores.begin(), scores.end());
  for (double& s : out) s = std::clamp(s, 0.0, 1.0);
  return out;
}

CrossValidation cross_validate(const FeatureMatrix& x, std::span<const double> y,
                               int folds, std::uint64_t seed,
                               const SvrOptions& options) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  if (x.rows() != y.size()) {
    throw InvalidArgument("feature matrix rows and targets differ in length");
  }
  if (x.rows() < static_cast<std::size_t>(folds)) {
    throw InvalidArgument("fewer rows than folds");
  }
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);
  Random rng(seed);
  rng.shuffle(std::span(order));

  CrossValidation cv;
  std::vector<double> oof(x.rows());
  double sum = 0;
  int defined = 0;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t p = 0; p < order.size(); ++p) {
      (static_cast<int>(p % folds) == f ? test_rows : train_rows)
          .push_back(order[p]);
    }
    std::vector<double> train_y, test_y;
    for (std::size_t r : train_rows) train_y.push_back(y[r]);
    for (std::size_t r : test_rows) test_y.push_back(y[r]);
    const FeatureMatrix train_x = x.select_rows(train_rows);
    const FeatureMatrix test_x = x.select_rows(test_rows);
    const RegressionModel model = train(train_x, train_y, options);
    const std::vector<double> pred = predict(model, test_x);
    for (std::size_t k = 0; k < test_rows.size(); ++k) oof[test_rows[k]] = pred[k];
    try {
      const double r = pearson(test_y, pred);
      cv.fold_pearson.push_back(r);
      sum += r;
      ++defined;
    } catch (const Error& e) {
      cv.fold_pearson.push_back(std::nullopt);
      cv.warnings.push_back("fold " + std::to_string(f) +
                            " excluded from the mean: " + e.what());
    }
  }
  if (defined > 0) cv.mean_pearson = sum / defined;
  try {
    cv.pooled_pearson = pearson(y, oof);
  } catch (const Error& e) {
    cv.warnings.push_back(std::string("pooled correlation undefined: ") + e.what());
  }
  return cv;
}

namespace {

constexpr std::string_view kModelMagic = "emoint-svr-model 1";

}  // namespace

std::string format_model(const RegressionModel& model) {
  std::string out(kModelMagic);
  out += "\nC " + format_double(model.C);
  out += "\nepsilon " + format_double(model.epsilon);
  out += "\nlayout_digest " + model.layout_digest;
  out += "\nbias " + format_double(model.bias);
  out += "\nweights " + std::to_string(model.weights.size()) + "\n";
  for (double w : model.weights) out += format_double(w) + "\n";
  return out;
}

RegressionModel parse_model(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kModelMagic) {
    throw ParseError(source, 1, "not a model file");
  }
  RegressionModel m;
  auto value_of = [&](std::size_t i, std::string_view key) -> std::string_view {
    if (i >= lines.size()) throw ParseError(source, i + 1, "truncated model file");
    const std::string_view line = lines[i];
    if (line.substr(0, key.size() + 1) != std::string(key) + " ") {
      throw ParseError(source, i + 1, "expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  };
  auto number = [&](std::size_t i, std::string_view s) {
    const auto v = parse_double(s);
    if (!v) throw ParseError(source, i + 1, "bad number '" + std::string(s) + "'");
    return *v;
  };
  m.C = number(1, value_of(1, "C"));
  m.epsilon = number(2, value_of(2, "epsilon"));
  m.layout_digest = std::string(value_of(3, "layout_digest"));
  m.bias = number(4, value_of(4, "bias"));
  const auto count = parse_int(value_of(5, "weights"));
  if (!count || *count < 0) throw ParseError(source, 6, "bad weight count");
  if (lines.size() != 6 + static_cast<std::size_t>(*count)) {
    throw ParseError(source, 0,
                     "expected " + std::to_string(*count) + " weights, found " +
                         std::to_string(lines.size() - 6));
  }
  m.weights.reserve(static_cast<std::size_t>(*count));
  for (std::size_t i = 6; i < lines.size(); ++i) m.weights.push_back(number(i, lines[i]));
  return m;
}

void save_model(const RegressionModel& model, const std::string& path) {
  write_file(path, format_model(model));
}

RegressionModel load_model(const std::string& path) {
  return parse_model(read_file(path), path);
}

}  // namespace emoint
