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

// Random maximum-diversity tuple generation for best-worst scaling.
//
// For N items the generator emits 2N 4-tuples in which every item occurs in
// exactly 8 tuples and no unordered pair of items shares more than one tuple,
// so each item is compared against 24 distinct partners.

#ifndef EMOINT_TUPLES_H_
#define EMOINT_TUPLES_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "emoint/error.h"

namespace emoint {

inline constexpr int kTupleSize = 4;
inline constexpr int kOccurrencesPerItem = 8;
inline constexpr int kPartnersPerItem =
    kOccurrencesPerItem * (kTupleSize - 1);  // 24
inline constexpr std::size_t kMinItems = kPartnersPerItem + 1;  // 25

struct Tuple4 {
  std::string tuple_id;
  std::array<std::string, kTupleSize> items;

  bool contains(std::string_view id) const;
};

struct TupleSet {
  std::vector<Tuple4> tuples;
  std::vector<std::string> items;  // the item universe
  std::uint64_t seed = 0;

  const Tuple4* find(std::string_view tuple_id) const;
};

// Too few items for the design to exist.
class InfeasibleDesignError : public Error {
 public:
  using Error::Error;
};

// The randomized search gave up after max_restarts attempts.
class TupleSearchError : public Error {
 public:
  using Error::Error;
};

// Deterministic for a fixed (items order, seed, max_restarts). From 28 items
// upward the search converges within the first attempt or two; 25 to 27 items
// are at or next to a perfect block design and usually exhaust the restarts
// (TupleSearchError).
TupleSet generate_tuples(const std::vector<std::string>& items,
                         std::uint64_t seed, int max_restarts = 20);

struct TupleViolation {
  enum class Kind {
    kCount,
    kOccurrence,
    kRepeatedPair,
    kDuplicateTuple,
    kMalformedTuple,
    kUnknownItem,
  };
  Kind kind;
  std::string message;
  std::vector<std::string> ids;  // offending item ids or tuple ids
};

std::vector<TupleViolation> validate_tuple_set(const TupleSet& ts);

// `tuple_id<TAB>id1<TAB>id2<TAB>id3<TAB>id4` per line.
std::string format_tuples(const TupleSet& ts);
void write_tuples(const TupleSet& ts, const std::string& path);

// The item universe is the ids in order of first appearance.
TupleSet parse_tuples_text(std::string_view text,
                           const std::string& source = "<tuples>");
TupleSet read_tuples(const std::string& path);

// One item id per line; blank lines ignored. Throws on duplicates.
std::vector<std::string> read_item_list(const std::string& path);

}  // namespace emoint

#endif  // EMOINT_TUPLES_H_
