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

#ifndef EMOINT_METRICS_H_
#define EMOINT_METRICS_H_

#include <span>
#include <vector>

#include "emoint/error.h"

namespace emoint {

// Correlation against a constant vector is undefined; raised instead of NaN.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// Product-moment correlation. Requires equal sizes >= 2 (InvalidArgument) and
// non-constant inputs (UndefinedCorrelationError).
double pearson(std::span<const double> a, std::span<const double> b);

// Pearson correlation of the average ranks.
double spearman(std::span<const double> a, std::span<const double> b);

// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace emoint

#endif  // EMOINT_METRICS_H_
