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

#include "emoint/feature_matrix.h"

#include <cmath>
#include <cstdio>

#include "emoint/error.h"

namespace emoint {

FeatureMatrix::FeatureMatrix(std::vector<std::string> column_names,
                             std::size_t sparse_width)
    : names_(std::move(column_names)), sparse_width_(sparse_width) {
  if (sparse_width_ > names_.size()) {
    throw InvalidArgument("sparse width exceeds matrix width");
  }
}

void FeatureMatrix::add_row(std::vector<SparseEntry> sparse,
                            std::span<const double> dense) {
  if (dense.size() != dense_width()) {
    throw InvalidArgument("dense row has " + std::to_string(dense.size()) +
                          " values, layout expects " +
                          std::to_string(dense_width()));
  }
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    if (sparse[i].first >= sparse_width_ ||
        (i > 0 && sparse[i].first <= sparse[i - 1].first)) {
      throw InvalidArgument("sparse row columns out of range or unsorted");
    }
  }
  sparse_rows_.push_back(std::move(sparse));
  dense_.insert(dense_.end(), dense.begin(), dense.end());
}

double FeatureMatrix::at(std::size_t row, std::size_t col) const {
  if (col >= sparse_width_) return dense_row(row)[col - sparse_width_];
  for (const auto& [c, v] : sparse_rows_[row]) {
    if (c == col) return v;
  }
  return 0.0;
}

double FeatureMatrix::dot(std::size_t row, std::span<const double> w) const {
  double s = 0;
  for (const auto& [c, v] : sparse_rows_[row]) s += v * w[c];
  const auto dense = dense_row(row);
  const double* wd = w.data() + sparse_width_;
  for (std::size_t k = 0; k < dense.size(); ++k) s += dense[k] * wd[k];
  return s;
}

void FeatureMatrix::axpy(std::size_t row, double alpha,
                         std::span<double> out) const {
  for (const auto& [c, v] : sparse_rows_[row]) out[c] += alpha * v;
  const auto dense = dense_row(row);
  double* od = out.data() + sparse_width_;
  for (std::size_t k = 0; k < dense.size(); ++k) od[k] += alpha * dense[k];
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix out(names_, sparse_width_);
  out.sparse_rows_.reserve(rows.size());
  out.dense_.reserve(rows.size() * dense_width());
  for (std::size_t r : rows) {
    out.sparse_rows_.push_back(sparse_rows_[r]);
    const auto d = dense_row(r);
    out.dense_.insert(out.dense_.end(), d.begin(), d.end());
  }
  return out;
}

std::string FeatureMatrix::layout_digest() const {
  return emoint::layout_digest(names_);
}

bool FeatureMatrix::all_finite() const {
  for (const auto& row : sparse_rows_) {
    for (const auto& [c, v] : row) {
      if (!std::isfinite(v)) return false;
    }
  }
  for (double v : dense_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string layout_digest(const std::vector<std::string>& column_names) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const std::string& name : column_names) {
    for (char c : name) feed(static_cast<unsigned char>(c));
    feed('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace emoint
