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

#include "emoint/dataset.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "emoint/error.h"
#include "emoint/random.h"
#include "emoint/text.h"

namespace emoint {

std::string_view emotion_name(Emotion e) {
  switch (e) {
    case Emotion::kAnger:
      return "anger";
    case Emotion::kFear:
      return "fear";
    case Emotion::kJoy:
      return "joy";
    case Emotion::kSadness:
      return "sadness";
  }
  return "unknown";
}

std::optional<Emotion> parse_emotion(std::string_view token) {
  const std::string lower = to_lower(trim(token));
  for (Emotion e : kAllEmotions) {
    if (lower == emotion_name(e)) return e;
  }
  return std::nullopt;
}

void Dataset::add(Tweet tweet) {
  if (tweet.emotion != emotion_) {
    throw InvalidArgument("tweet '" + tweet.id + "' has emotion " +
                          std::string(emotion_name(tweet.emotion)) +
                          ", dataset is " +
                          std::string(emotion_name(emotion_)));
  }
  if (tweet.id.empty()) throw InvalidArgument("tweet id is empty");
  if (tweet.gold_score &&
      !(*tweet.gold_score >= 0.0 && *tweet.gold_score <= 1.0)) {
    throw InvalidArgument("tweet '" + tweet.id + "' score " +
                          format_double(*tweet.gold_score) +
                          " outside [0, 1]");
  }
  if (index_.count(tweet.id) > 0) {
    throw InvalidArgument("duplicate tweet id '" + tweet.id + "'");
  }
  index_.emplace(tweet.id, tweets_.size());
  tweets_.push_back(std::move(tweet));
}

const Tweet* Dataset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &tweets_[it->second];
}

Dataset parse_corpus_text(std::string_view text, bool expect_gold,
                          const std::string& source, Emotion fallback) {
  const std::vector<std::string> lines = split_lines(text);
  std::optional<Dataset> ds;
  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 4) {
      throw ParseError(source, lineno,
                       "expected 4 tab-separated columns, found " +
                           std::to_string(cols.size()));
    }
    Tweet t;
    t.id = std::string(cols[0]);
    if (t.id.empty()) throw ParseError(source, lineno, "empty id");
    t.text = std::string(cols[1]);
    const auto emotion = parse_emotion(cols[2]);
    if (!emotion) {
      throw ParseError(source, lineno,
                       "unknown emotion '" + std::string(cols[2]) + "'");
    }
    t.emotion = *emotion;
    if (!expect_gold && cols[3] == kNoScore) {
      t.gold_score.reset();
    } else {
      const auto score = parse_double(cols[3]);
      if (!score) {
        throw ParseError(source, lineno,
                         "unparseable score '" + std::string(cols[3]) + "'");
      }
      if (*score < 0.0 || *score > 1.0) {
        throw ParseError(source, lineno,
                         "score " + std::string(cols[3]) + " outside [0, 1]");
      }
      t.gold_score = *score;
    }
    if (auto it = first_seen.find(t.id); it != first_seen.end()) {
      throw ParseError(source, lineno,
                       "duplicate id '" + t.id + "' (first seen on line " +
                           std::to_string(it->second) + ")");
    }
    first_seen.emplace(t.id, lineno);
    if (!ds) ds.emplace(t.emotion);
    if (t.emotion != ds->emotion()) {
      throw ParseError(source, lineno,
                       "emotion '" + std::string(cols[2]) +
                           "' differs from the file's emotion '" +
                           std::string(emotion_name(ds->emotion())) + "'");
    }
    ds->add(std::move(t));
  }
  return ds ? std::move(*ds) : Dataset(fallback);
}

Dataset parse_corpus(const std::string& path, bool expect_gold,
                     Emotion fallback) {
  return parse_corpus_text(read_file(path), expect_gold, path, fallback);
}

std::string format_corpus(const Dataset& ds) {
  std::string out;
  for (const Tweet& t : ds.tweets()) {
    out += t.id;
    out += '\t';
    out += t.text;
    out += '\t';
    out += emotion_name(t.emotion);
    out += '\t';
    out += t.gold_score ? format_double(*t.gold_score) : std::string(kNoScore);
    out += '\n';
  }
  return out;
}

void write_corpus(const Dataset& ds, const std::string& path) {
  write_file(path, format_corpus(ds));
}

std::set<std::string> read_query_terms(const std::string& path) {
  std::set<std::string> terms;
  for (const std::string& line : read_lines(path)) {
    const std::string_view word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    terms.insert(to_lower(word));
  }
  return terms;
}

namespace {

bool is_hashtag(std::string_view token) {
  return token.size() > 1 && token.front() == '#';
}

}  // namespace

std::optional<Tweet> strip_trailing_hashtag_query(
    const Tweet& tweet, const std::set<std::string>& query_terms) {
  const auto tokens = split_whitespace(tweet.text);
  std::size_t segment_start = tokens.size();
  while (segment_start > 0 && is_hashtag(tokens[segment_start - 1])) {
    --segment_start;
  }
  std::vector<std::string> kept;
  bool stripped = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i >= segment_start &&
        query_terms.count(to_lower(tokens[i].substr(1))) > 0) {
      stripped = true;
      continue;
    }
    kept.emplace_back(tokens[i]);
  }
  if (!stripped || kept.empty()) return std::nullopt;

  Tweet copy;
  copy.id = tweet.id + ".nqt";
  copy.text = join(kept, " ");
  copy.emotion = tweet.emotion;
  copy.kind = TweetKind::kNQT;
  copy.pair_id = tweet.id;
  return copy;
}

PairList read_pairs(const std::string& path) {
  PairList pairs;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw ParseError(path, i + 1, "expected nqt_id<TAB>hqt_id");
    }
    pairs.emplace_back(std::string(cols[0]), std::string(cols[1]));
  }
  return pairs;
}

void write_pairs(const PairList& pairs, const std::string& path) {
  std::string out;
  for (const auto& [nqt, hqt] : pairs) out += nqt + "\t" + hqt + "\n";
  write_file(path, out);
}

Dataset attach_pairs(const Dataset& ds, const PairList& pairs) {
  std::unordered_map<std::string, std::string> nqt_to_hqt;
  std::set<std::string> hqt_ids;
  for (const auto& [nqt, hqt] : pairs) {
    if (!ds.contains(nqt)) {
      throw InvalidArgument("pair references unknown NQT id '" + nqt + "'");
    }
    if (!ds.contains(hqt)) {
      throw InvalidArgument("pair references unknown HQT id '" + hqt + "'");
    }
    if (nqt == hqt) throw InvalidArgument("tweet '" + nqt + "' paired to itself");
    if (!nqt_to_hqt.emplace(nqt, hqt).second) {
      throw InvalidArgument("NQT id '" + nqt + "' paired twice");
    }
    hqt_ids.insert(hqt);
  }
  Dataset out(ds.emotion());
  for (Tweet t : ds.tweets()) {
    if (auto it = nqt_to_hqt.find(t.id); it != nqt_to_hqt.end()) {
      if (hqt_ids.count(t.id) > 0) {
        throw InvalidArgument("tweet '" + t.id + "' is both HQT and NQT");
      }
      t.kind = TweetKind::kNQT;
      t.pair_id = it->second;
    } else if (hqt_ids.count(t.id) > 0) {
      t.kind = TweetKind::kHQT;
      t.pair_id.reset();
    }
    out.add(std::move(t));
  }
  return out;
}

Partition partition_dataset(const Dataset& ds, const SplitFractions& fractions,
                            std::uint64_t seed) {
  const double parts[3] = {fractions.train, fractions.dev, fractions.test};
  for (double f : parts) {
    if (!std::isfinite(f) || f < 0.0) {
      throw InvalidArgument("split fractions must be non-negative");
    }
  }
  if (std::abs(parts[0] + parts[1] + parts[2] - 1.0) > 1e-6) {
    throw InvalidArgument("split fractions must sum to 1");
  }

  // Group every NQT tweet with its HQT source; groups are keyed by the index
  // of the source tweet.
  const auto& tweets = ds.tweets();
  std::map<std::size_t, std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < tweets.size(); ++i) position[tweets[i].id] = i;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const Tweet& t = tweets[i];
    if (t.kind == TweetKind::kNQT) {
      if (!t.pair_id) {
        throw InvalidArgument("NQT tweet '" + t.id + "' has no pair id");
      }
      auto it = position.find(*t.pair_id);
      if (it == position.end()) {
        throw InvalidArgument("NQT tweet '" + t.id +
                              "' references missing tweet '" + *t.pair_id +
                              "'");
      }
      groups[it->second].push_back(i);
    } else {
      groups[i].insert(groups[i].begin(), i);
    }
  }
  std::vector<std::vector<std::size_t>> order;
  order.reserve(groups.size());
  for (auto& [_, members] : groups) order.push_back(std::move(members));
  Random rng(seed);
  rng.shuffle(std::span(order));

  const double n = static_cast<double>(tweets.size());
  const double cut1 = std::llround(parts[0] * n);
  const double cut2 = std::llround((parts[0] + parts[1]) * n);
  std::vector<int> split_of(tweets.size(), 2);
  double start = 0;
  for (const auto& group : order) {
    const double mid = start + static_cast<double>(group.size()) / 2.0;
    const int split = mid <= cut1 ? 0 : (mid <= cut2 ? 1 : 2);
    for (std::size_t i : group) split_of[i] = split;
    start += static_cast<double>(group.size());
  }

  Partition out{Dataset(ds.emotion()), Dataset(ds.emotion()),
                Dataset(ds.emotion())};
  Dataset* targets[3] = {&out.train, &out.dev, &out.test};
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    targets[split_of[i]]->add(tweets[i]);
  }
  return out;
}

}  // namespace emoint
