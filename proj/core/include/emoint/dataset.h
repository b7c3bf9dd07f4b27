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

// Corpus data model: tweets, per-emotion datasets, the four-column TSV
// format, hashtag-stripped copies and pair-aware partitioning.

#ifndef EMOINT_DATASET_H_
#define EMOINT_DATASET_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emoint {

enum class Emotion { kAnger, kFear, kJoy, kSadness };

inline constexpr std::array<Emotion, 4> kAllEmotions = {
    Emotion::kAnger, Emotion::kFear, Emotion::kJoy, Emotion::kSadness};

std::string_view emotion_name(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view token);

// QT: query term appears as a plain word (or a non-trailing hashtag).
// HQT: query term appears as a hashtag in the trailing all-hashtag segment.
// NQT: copy of an HQT tweet with that hashtag removed.
enum class TweetKind { kQT, kHQT, kNQT };

// Sentinel written in the score column of unlabeled instances.
inline constexpr std::string_view kNoScore = "NONE";

struct Tweet {
  std::string id;
  std::string text;
  Emotion emotion = Emotion::kAnger;
  std::optional<double> gold_score;
  TweetKind kind = TweetKind::kQT;
  std::optional<std::string> pair_id;  // set iff kind == kNQT
};

// Tweets of one emotion, in file order, with unique ids.
class Dataset {
 public:
  explicit Dataset(Emotion emotion) : emotion_(emotion) {}

  // Throws InvalidArgument on emotion mismatch, duplicate or empty id, or a
  // gold score outside [0, 1].
  void add(Tweet tweet);

  Emotion emotion() const { return emotion_; }
  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }

  const Tweet* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

 private:
  Emotion emotion_;
  std::vector<Tweet> tweets_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Parses `id<TAB>text<TAB>emotion<TAB>score` lines. When expect_gold is false
// the score column may hold kNoScore. An empty file yields an empty dataset
// whose emotion is `fallback`. Errors are ParseError carrying the line number.
Dataset parse_corpus(const std::string& path, bool expect_gold,
                     Emotion fallback = Emotion::kAnger);
Dataset parse_corpus_text(std::string_view text, bool expect_gold,
                          const std::string& source = "<corpus>",
                          Emotion fallback = Emotion::kAnger);

std::string format_corpus(const Dataset& ds);
void write_corpus(const Dataset& ds, const std::string& path);

// One lowercase word per line; blank lines and '#' comments ignored.
std::set<std::string> read_query_terms(const std::string& path);

// Returns the NQT copy of `tweet` when its trailing all-hashtag segment holds
// #<term> for some term in query_terms (case-insensitive). Every such hashtag
// in the trailing segment is dropped and whitespace is collapsed. The copy's
// id is `<source id>.nqt`, it carries no gold score, and pair_id names the
// source. Returns nothing when no trailing query hashtag exists or when
// nothing would remain of the text.
std::optional<Tweet> strip_trailing_hashtag_query(
    const Tweet& tweet, const std::set<std::string>& query_terms);

// Pair file: `nqt_id<TAB>hqt_id` per line. Marks the referenced tweets as
// NQT/HQT. Throws InvalidArgument for ids that are not in the dataset.
using PairList = std::vector<std::pair<std::string, std::string>>;
PairList read_pairs(const std::string& path);
void write_pairs(const PairList& pairs, const std::string& path);
Dataset attach_pairs(const Dataset& ds, const PairList& pairs);

struct SplitFractions {
  double train = 0.5;
  double dev = 0.05;
  double test = 0.45;
};

struct Partition {
  Dataset train;
  Dataset dev;
  Dataset test;
};

// Shuffles pair-groups (an HQT tweet together with its NQT copies, or a lone
// tweet) with `seed` and cuts the sequence at the cumulative-fraction
// boundaries. A group goes to the split that contains its midpoint, so pairs
// never straddle splits and split sizes are within one group of the target.
// Each split keeps the input's relative order.
Partition partition_dataset(const Dataset& ds, const SplitFractions& fractions,
                            std::uint64_t seed);

}  // namespace emoint

#endif  // EMOINT_DATASET_H_
