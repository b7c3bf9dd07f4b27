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

// Best-worst scaling aggregation: counting scores, the pairwise orders a
// single judgment implies, and split-half reliability.

#ifndef EMOINT_BWS_H_
#define EMOINT_BWS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoint/dataset.h"
#include "emoint/error.h"
#include "emoint/tuples.h"

namespace emoint {

class InvalidResponseError : public Error {
 public:
  using Error::Error;
};

struct BwsResponse {
  std::string tuple_id;
  std::string annotator_id;
  std::string best;
  std::string worst;
  bool is_gold = false;
  std::optional<bool> gold_correct;  // present iff is_gold
  std::string timestamp;
};

struct PairOrder {
  std::string higher;
  std::string lower;

  auto operator<=>(const PairOrder&) const = default;
};

// The five ordered pairs implied by picking `best` and `worst` in a 4-tuple:
// best beats the other three, and the two middle items beat worst.
std::vector<PairOrder> implied_pair_orders(const Tuple4& tuple,
                                           std::string_view best,
                                           std::string_view worst);

// Throws InvalidResponseError when best == worst or either is not in tuple.
void check_response(const Tuple4& tuple, std::string_view best,
                    std::string_view worst);

struct ItemScore {
  int best = 0;
  int worst = 0;
  int judgments = 0;  // responses on tuples containing the item
  double raw = 0;     // (best - worst) / judgments, in [-1, 1]
  double scaled = 0;  // (raw + 1) / 2, in [0, 1]
};

struct ScoreTable {
  Emotion emotion = Emotion::kAnger;
  std::map<std::string, ItemScore> entries;  // judged items only
};

struct ScoringOptions {
  bool include_gold = false;
};

// Counting scores. Items that no counted response covers are absent.
ScoreTable compute_scores(const TupleSet& tuples,
                          std::span<const BwsResponse> responses,
                          Emotion emotion, const ScoringOptions& options = {});

struct Reliability {
  double pearson = 0;
  double spearman = 0;
  int iterations = 0;  // iterations whose correlations were defined
};

// Each iteration splits every tuple's responses into two non-empty halves
// (sizes floor(m/2) and ceil(m/2), the larger half chosen at random for odd
// m), scores each half, and correlates the items scored in both.
// Per-iteration streams derive from (seed, iteration). Throws
// InvalidArgument naming the first tuple with fewer than two responses.
Reliability split_half_reliability(const TupleSet& tuples,
                                   std::span<const BwsResponse> responses,
                                   int iterations, std::uint64_t seed,
                                   const ScoringOptions& options = {});

// CSV with header tuple_id,annotator_id,best,worst,is_gold,gold_correct,
// timestamp. Booleans are written as 1/0; gold_correct is empty for regular
// responses. Fields are quoted when they contain ',', '"' or a newline.
inline constexpr std::string_view kResponseCsvHeader =
    "tuple_id,annotator_id,best,worst,is_gold,gold_correct,timestamp";

std::string format_responses(std::span<const BwsResponse> responses);
void write_responses(std::span<const BwsResponse> responses,
                     const std::string& path);
std::vector<BwsResponse> parse_responses_text(
    std::string_view text, const std::string& source = "<responses>");
std::vector<BwsResponse> read_responses(const std::string& path);

// Scores as a corpus-format dataset (scaled score in the score column) so
// they can serve directly as gold data. Text comes from `corpus` when given.
Dataset scores_to_dataset(const ScoreTable& table, const Dataset* corpus);

}  // namespace emoint

#endif  // EMOINT_BWS_H_
