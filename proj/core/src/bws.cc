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

#include "emoint/bws.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "emoint/metrics.h"
#include "emoint/random.h"
#include "emoint/text.h"

namespace emoint {

void check_response(const Tuple4& tuple, std::string_view best,
                    std::string_view worst) {
  if (best == worst) {
    throw InvalidResponseError("tuple " + tuple.tuple_id +
                               ": best and worst are both '" +
                               std::string(best) + "'");
  }
  for (std::string_view id : {best, worst}) {
    if (!tuple.contains(id)) {
      throw InvalidResponseError("tuple " + tuple.tuple_id +
                                 " does not contain item '" +
                                 std::string(id) + "'");
    }
  }
}

std::vector<PairOrder> implied_pair_orders(const Tuple4& tuple,
                                           std::string_view best,
                                           std::string_view worst) {
  check_response(tuple, best, worst);
  std::vector<PairOrder> out;
  for (const std::string& x : tuple.items) {
    if (x != best) out.push_back({std::string(best), x});
  }
  for (const std::string& x : tuple.items) {
    if (x != best && x != worst) out.push_back({x, std::string(worst)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// A counted response resolved to integer indices.
struct Judgment {
  int tuple;
  int best;
  int worst;
};

struct Resolved {
  std::vector<std::array<int, kTupleSize>> tuple_items;
  std::vector<Judgment> judgments;
};

Resolved resolve(const TupleSet& ts, std::span<const BwsResponse> responses,
                 const ScoringOptions& options) {
  std::unordered_map<std::string, int> item_index;
  for (std::size_t i = 0; i < ts.items.size(); ++i) {
    item_index.emplace(ts.items[i], static_cast<int>(i));
  }
  std::unordered_map<std::string, int> tuple_index;
  Resolved r;
  r.tuple_items.reserve(ts.tuples.size());
  for (std::size_t t = 0; t < ts.tuples.size(); ++t) {
    const Tuple4& tuple = ts.tuples[t];
    tuple_index.emplace(tuple.tuple_id, static_cast<int>(t));
    std::array<int, kTupleSize> idx{};
    for (int k = 0; k < kTupleSize; ++k) {
      auto [it, inserted] = item_index.emplace(
          tuple.items[k], static_cast<int>(item_index.size()));
      idx[k] = it->second;
    }
    r.tuple_items.push_back(idx);
  }
  for (const BwsResponse& resp : responses) {
    auto it = tuple_index.find(resp.tuple_id);
    if (it == tuple_index.end()) {
      throw InvalidArgument("response by '" + resp.annotator_id +
                            "' references unknown tuple '" + resp.tuple_id +
                            "'");
    }
    const Tuple4& tuple = ts.tuples[it->second];
    check_response(tuple, resp.best, resp.worst);
    if (resp.is_gold && !options.include_gold) continue;
    r.judgments.push_back(
        {it->second, item_index.at(resp.best), item_index.at(resp.worst)});
  }
  return r;
}

struct Counts {
  std::vector<int> best;
  std::vector<int> worst;
  std::vector<int> judgments;
};

Counts count(const Resolved& r, std::size_t num_items,
             std::span<const std::size_t> subset) {
  Counts c{std::vector<int>(num_items), std::vector<int>(num_items),
           std::vector<int>(num_items)};
  for (std::size_t j : subset) {
    const Judgment& jd = r.judgments[j];
    ++c.best[jd.best];
    ++c.worst[jd.worst];
    for (int item : r.tuple_items[jd.tuple]) ++c.judgments[item];
  }
  return c;
}

std::size_t universe_size(const TupleSet& ts, const Resolved& r) {
  int max_index = static_cast<int>(ts.items.size()) - 1;
  for (const auto& t : r.tuple_items) {
    for (int i : t) max_index = std::max(max_index, i);
  }
  return static_cast<std::size_t>(max_index + 1);
}

double raw_score(const Counts& c, std::size_t item) {
  return static_cast<double>(c.best[item] - c.worst[item]) /
         static_cast<double>(c.judgments[item]);
}

}  // namespace

ScoreTable compute_scores(const TupleSet& tuples,
                          std::span<const BwsResponse> responses,
                          Emotion emotion, const ScoringOptions& options) {
  const Resolved r = resolve(tuples, responses, options);
  const std::size_t n = universe_size(tuples, r);
  std::vector<std::size_t> all(r.judgments.size());
  std::iota(all.begin(), all.end(), 0);
  const Counts c = count(r, n, all);

  // Names for indices beyond the declared universe (items that only appear
  // in tuples).
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < tuples.items.size(); ++i) names[i] = tuples.items[i];
  for (std::size_t t = 0; t < tuples.tuples.size(); ++t) {
    for (int k = 0; k < kTupleSize; ++k) {
      names[r.tuple_items[t][k]] = tuples.tuples[t].items[k];
    }
  }

  ScoreTable table;
  table.emotion = emotion;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.judgments[i] == 0) continue;
    ItemScore s;
    s.best = c.best[i];
    s.worst = c.worst[i];
    s.judgments = c.judgments[i];
    s.raw = raw_score(c, i);
    s.scaled = (s.raw + 1.0) / 2.0;
    table.entries.emplace(names[i], s);
  }
  return table;
}

Reliability split_half_reliability(const TupleSet& tuples,
                                   std::span<const BwsResponse> responses,
                                   int iterations, std::uint64_t seed,
                                   const ScoringOptions& options) {
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  const Resolved r = resolve(tuples, responses, options);
  const std::size_t n = universe_size(tuples, r);

  std::vector<std::vector<std::size_t>> by_tuple(tuples.tuples.size());
  for (std::size_t j = 0; j < r.judgments.size(); ++j) {
    by_tuple[r.judgments[j].tuple].push_back(j);
  }
  for (std::size_t t = 0; t < by_tuple.size(); ++t) {
    if (by_tuple[t].size() < 2) {
      throw InvalidArgument("tuple " + tuples.tuples[t].tuple_id + " has " +
                            std::to_string(by_tuple[t].size()) +
                            " response(s); split-half needs at least 2");
    }
  }

  Reliability out;
  double sum_pearson = 0;
  double sum_spearman = 0;
  std::vector<std::size_t> half_a, half_b;
  std::vector<double> xs, ys;
  for (int it = 0; it < iterations; ++it) {
    Random rng(derive_seed(seed, static_cast<std::uint64_t>(it)));
    half_a.clear();
    half_b.clear();
    for (std::vector<std::size_t> members : by_tuple) {
      rng.shuffle(std::span(members));
      std::size_t k = members.size() / 2;
      if (members.size() % 2 == 1 && rng.bernoulli(0.5)) ++k;
      half_a.insert(half_a.end(), members.begin(), members.begin() + k);
      half_b.insert(half_b.end(), members.begin() + k, members.end());
    }
    const Counts ca = count(r, n, half_a);
    const Counts cb = count(r, n, half_b);
    xs.clear();
    ys.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (ca.judgments[i] == 0 || cb.judgments[i] == 0) continue;
      xs.push_back(raw_score(ca, i));
      ys.push_back(raw_score(cb, i));
    }
    try {
      const double p = pearson(xs, ys);
      const double s = spearman(xs, ys);
      sum_pearson += p;
      sum_spearman += s;
      ++out.iterations;
    } catch (const UndefinedCorrelationError&) {
      // A degenerate split; it does not count toward the average.
    }
  }
  if (out.iterations == 0) {
    throw UndefinedCorrelationError(
        "split-half correlation undefined in every iteration");
  }
  out.pearson = sum_pearson / out.iterations;
  out.spearman = sum_spearman / out.iterations;
  return out;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits CSV text into records, honoring quoted fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text,
                                                const std::string& source,
                                                std::vector<std::size_t>& lines) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool at_field_start = true;
  std::size_t line = 1;
  std::size_t record_line = 1;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!(record.size() == 1 && record[0].empty())) {
      records.push_back(std::move(record));
      lines.push_back(record_line);
    }
    record.clear();
    at_field_start = true;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && at_field_start) {
      quoted = true;
      at_field_start = false;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      at_field_start = true;
    } else if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
    } else if (c == '\r') {
      // Tolerate CRLF.
    } else {
      field += c;
      at_field_start = false;
    }
  }
  if (quoted) throw ParseError(source, line, "unterminated quoted field");
  if (!field.empty() || !record.empty()) end_record();
  return records;
}

std::optional<bool> parse_bool(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower == "1" || lower == "true") return true;
  if (lower == "0" || lower == "false") return false;
  return std::nullopt;
}

}  // namespace

std::string format_responses(std::span<const BwsResponse> responses) {
  std::string out(kResponseCsvHeader);
  out += '\n';
  for (const BwsResponse& r : responses) {
    out += csv_field(r.tuple_id) + ',' + csv_field(r.annotator_id) + ',' +
           csv_field(r.best) + ',' + csv_field(r.worst) + ',' +
           (r.is_gold ? "1" : "0") + ',' +
           (r.gold_correct ? (*r.gold_correct ? "1" : "0") : "") + ',' +
           csv_field(r.timestamp) + '\n';
  }
  return out;
}

void write_responses(std::span<const BwsResponse> responses,
                     const std::string& path) {
  write_file(path, format_responses(responses));
}

std::vector<BwsResponse> parse_responses_text(std::string_view text,
                                              const std::string& source) {
  std::vector<std::size_t> lines;
  const auto records = parse_csv(text, source, lines);
  std::vector<BwsResponse> out;
  if (records.empty()) return out;
  const std::vector<std::string> expected = [] {
    std::vector<std::string> cols;
    for (auto c : split(kResponseCsvHeader, ',')) cols.emplace_back(c);
    return cols;
  }();
  if (records[0] != expected) {
    throw ParseError(source, lines[0],
                     "expected header '" + std::string(kResponseCsvHeader) +
                         "'");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.size() != expected.size()) {
      throw ParseError(source, lines[i],
                       "expected 7 fields, found " + std::to_string(rec.size()));
    }
    BwsResponse r;
    r.tuple_id = rec[0];
    r.annotator_id = rec[1];
    r.best = rec[2];
    r.worst = rec[3];
    const auto gold = parse_bool(rec[4]);
    if (!gold) throw ParseError(source, lines[i], "bad is_gold '" + rec[4] + "'");
    r.is_gold = *gold;
    if (trim(rec[5]).empty()) {
      if (r.is_gold) {
        throw ParseError(source, lines[i], "gold response lacks gold_correct");
      }
    } else {
      const auto correct = parse_bool(rec[5]);
      if (!correct) {
        throw ParseError(source, lines[i], "bad gold_correct '" + rec[5] + "'");
      }
      if (!r.is_gold) {
        throw ParseError(source, lines[i],
                         "gold_correct set on a non-gold response");
      }
      r.gold_correct = *correct;
    }
    r.timestamp = rec[6];
    if (r.tuple_id.empty() || r.best.empty() || r.worst.empty()) {
      throw ParseError(source, lines[i], "empty tuple_id, best or worst");
    }
    if (r.best == r.worst) {
      throw ParseError(source, lines[i], "best equals worst");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BwsResponse> read_responses(const std::string& path) {
  return parse_responses_text(read_file(path), path);
}

Dataset scores_to_dataset(const ScoreTable& table, const Dataset* corpus) {
  Dataset out(table.emotion);
  auto make = [&](const std::string& id, const std::string& text,
                  const ItemScore& s) {
    Tweet t;
    t.id = id;
    t.text = text;
    t.emotion = table.emotion;
    t.gold_score = std::clamp(s.scaled, 0.0, 1.0);
    out.add(std::move(t));
  };
  if (corpus != nullptr) {
    for (const Tweet& tw : corpus->tweets()) {
      if (auto it = table.entries.find(tw.id); it != table.entries.end()) {
        make(tw.id, tw.text, it->second);
      }
    }
    for (const auto& [id, s] : table.entries) {
      if (!corpus->contains(id)) make(id, "", s);
    }
  } else {
    for (const auto& [id, s] : table.entries) make(id, "", s);
  }
  return out;
}

}  // namespace emoint
