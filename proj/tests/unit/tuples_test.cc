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

#include "emoint/tuples.h"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "emoint/error.h"

#include "oracles.h"
#include "temp_dir.h"

namespace emoint {
namespace {

using testing::numbered_items;

// Independent design check: counts and pair multiplicities recomputed from
// scratch.
void expect_valid_design(const TupleSet& ts, std::size_t n) {
  ASSERT_EQ(ts.tuples.size(), 2 * n);
  std::map<std::string, int> occurrences;
  std::map<std::pair<std::string, std::string>, int> pairs;
  for (const Tuple4& t : ts.tuples) {
    ASSERT_EQ(std::set<std::string>(t.items.begin(), t.items.end()).size(), 4u);
    for (int a = 0; a < 4; ++a) {
      ++occurrences[t.items[a]];
      for (int b = a + 1; b < 4; ++b) {
        auto key = std::minmax(t.items[a], t.items[b]);
        ++pairs[{key.first, key.second}];
      }
    }
  }
  ASSERT_EQ(occurrences.size(), n);
  for (const auto& [item, count] : occurrences) ASSERT_EQ(count, 8) << item;
  for (const auto& [pair, count] : pairs) ASSERT_EQ(count, 1) << pair.first;
  EXPECT_TRUE(validate_tuple_set(ts).empty());
}

TEST(TupleGenTest, HundredItemsEachSeenEightTimes) {
  const auto items = numbered_items(100);
  const TupleSet ts = generate_tuples(items, 3);
  expect_valid_design(ts, 100);
}

TEST(TupleGenTest, TwentyFourItemsIsInfeasible) {
  // 8 tuples x 3 partners = 24 distinct partners > 23 available.
  EXPECT_THROW(generate_tuples(numbered_items(24), 1), InfeasibleDesignError);
}

TEST(TupleGenTest, RejectsDuplicateIds) {
  auto items = numbered_items(40);
  items[5] = items[6];
  EXPECT_THROW(generate_tuples(items, 1), InvalidArgument);
}

TEST(TupleGenTest, DeterministicForSeed) {
  const auto items = numbered_items(60);
  EXPECT_EQ(format_tuples(generate_tuples(items, 77)),
            format_tuples(generate_tuples(items, 77)));
  EXPECT_NE(format_tuples(generate_tuples(items, 77)),
            format_tuples(generate_tuples(items, 78)));
}

TEST(TupleGenPropertyTest, ValidAcrossSizesAndSeeds) {
  for (std::size_t n : {28u, 29u, 30u, 31u, 37u, 50u, 64u, 101u}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      SCOPED_TRACE("n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      expect_valid_design(generate_tuples(numbered_items(n), seed), n);
    }
  }
}

TEST(TupleGenTest, OfficialCorpusSize) {
  expect_valid_design(generate_tuples(numbered_items(1701, "t"), 5), 1701);
}

TEST(ValidateTest, RepeatedPairIsReportedOnce) {
  TupleSet ts = generate_tuples(numbered_items(100), 9);
  // Copy a pair from tuple 0 into tuple 1, replacing two of its items, then
  // fix up nothing else: the pair repeats.
  const std::string a = ts.tuples[0].items[0];
  const std::string b = ts.tuples[0].items[1];
  Tuple4* target = nullptr;
  for (Tuple4& t : ts.tuples) {
    if (!t.contains(a) && !t.contains(b)) {
      target = &t;
      break;
    }
  }
  ASSERT_NE(target, nullptr);
  target->items[0] = a;
  target->items[1] = b;
  const auto violations = validate_tuple_set(ts);
  int repeated = 0;
  for (const auto& v : violations) {
    if (v.kind == TupleViolation::Kind::kRepeatedPair) {
      ++repeated;
      EXPECT_EQ(std::set<std::string>(v.ids.begin(), v.ids.end()),
                (std::set<std::string>{a, b}));
    }
  }
  EXPECT_EQ(repeated, 1);
}

TEST(ValidateTest, MissingTupleGivesCountViolation) {
  TupleSet ts = generate_tuples(numbered_items(100), 4);
  ts.tuples.pop_back();
  const auto violations = validate_tuple_set(ts);
  ASSERT_FALSE(violations.empty());
  EXPECT_EQ(violations[0].kind, TupleViolation::Kind::kCount);
  EXPECT_NE(violations[0].message.find("199 \xE2\x89\xA0 200"), std::string::npos)
      << violations[0].message;
}

TEST(ValidateTest, UnknownAndMalformed) {
  TupleSet ts = generate_tuples(numbered_items(30), 2);
  ts.tuples[0].items[0] = "stranger";
  ts.tuples[1].items[1] = ts.tuples[1].items[2];
  std::set<TupleViolation::Kind> kinds;
  for (const auto& v : validate_tuple_set(ts)) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(TupleViolation::Kind::kUnknownItem));
  EXPECT_TRUE(kinds.count(TupleViolation::Kind::kMalformedTuple));
}

TEST(TupleIoTest, RoundTripThroughFile) {
  testing::TempDir dir;
  const TupleSet ts = generate_tuples(numbered_items(30), 12);
  write_tuples(ts, dir.file("t.tsv"));
  const TupleSet back = read_tuples(dir.file("t.tsv"));
  EXPECT_EQ(format_tuples(back), format_tuples(ts));
  EXPECT_EQ(std::set<std::string>(back.items.begin(), back.items.end()),
            std::set<std::string>(ts.items.begin(), ts.items.end()));
}

TEST(TupleIoTest, ParseErrorsCarryLines) {
  try {
    parse_tuples_text("t1\ta\tb\tc\td\nt2\ta\tb\n", "x.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_tuples_text("t1\ta\tb\tc\td\nt1\te\tf\tg\th\n"), ParseError);
}

}  // namespace
}  // namespace emoint
