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

#ifndef EMOINT_FEATURE_MATRIX_H_
#define EMOINT_FEATURE_MATRIX_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace emoint {

// Rows of features over one column layout: sparse columns [0, sparse_width)
// followed by dense columns [sparse_width, width).
class FeatureMatrix {
 public:
  using SparseEntry = std::pair<std::uint32_t, double>;

  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> column_names, std::size_t sparse_width);

  // `sparse` holds column indices < sparse_width in increasing order;
  // `dense` has exactly dense_width() values.
  void add_row(std::vector<SparseEntry> sparse, std::span<const double> dense);

  std::size_t rows() const { return sparse_rows_.size(); }
  std::size_t width() const { return names_.size(); }
  std::size_t sparse_width() const { return sparse_width_; }
  std::size_t dense_width() const { return names_.size() - sparse_width_; }
  const std::vector<std::string>& column_names() const { return names_; }

  std::span<const SparseEntry> sparse_row(std::size_t row) const {
    return sparse_rows_[row];
  }
  std::span<const double> dense_row(std::size_t row) const {
    return std::span(dense_).subspan(row * dense_width(), dense_width());
  }

  // Value at (row, col); linear in the row's sparse entries.
  double at(std::size_t row, std::size_t col) const;

  // x_row . w for a weight vector of length width().
  double dot(std::size_t row, std::span<const double> w) const;
  // out += alpha * x_row.
  void axpy(std::size_t row, double alpha, std::span<double> out) const;

  // Copy restricted to the given rows, in the given order.
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  // Stable 64-bit FNV-1a digest of the column names, as 16 hex digits.
  std::string layout_digest() const;

  bool all_finite() const;

 private:
  std::vector<std::string> names_;
  std::size_t sparse_width_ = 0;
  std::vector<std::vector<SparseEntry>> sparse_rows_;
  std::vector<double> dense_;
};

std::string layout_digest(const std::vector<std::string>& column_names);

}  // namespace emoint

#endif  // EMOINT_FEATURE_MATRIX_H_
