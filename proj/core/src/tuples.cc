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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "emoint/random.h"
#include "emoint/text.h"

namespace emoint {

bool Tuple4::contains(std::string_view id) const {
  return std::find(items.begin(), items.end(), id) != items.end();
}

const Tuple4* TupleSet::find(std::string_view tuple_id) const {
  for (const Tuple4& t : tuples) {
    if (t.tuple_id == tuple_id) return &t;
  }
  return nullptr;
}

namespace {

using Block = std::array<int, kTupleSize>;

// One attempt of the constructive search over integer item indices.
class DesignSearch {
 public:
  DesignSearch(int n, Random& rng) : n_(n), rng_(rng) {}

  std::optional<std::vector<Block>> run() {
    greedy();
    if (!deal_leftovers()) return std::nullopt;
    if (!repair()) return std::nullopt;
    return std::move(blocks_);
  }

 private:
  // Buckets of items keyed by remaining occurrence count, with O(1) removal.
  struct Buckets {
    std::array<std::vector<int>, kOccurrencesPerItem + 1> items;
    std::vector<int> slot;
  };

  bool used_pair(int a, int b) const {
    const auto& p = partners_[a];
    return std::find(p.begin(), p.end(), b) != p.end();
  }

  void bucket_remove(Buckets& bk, int item, int count) {
    auto& v = bk.items[count];
    const int pos = bk.slot[item];
    v[pos] = v.back();
    bk.slot[v[pos]] = pos;
    v.pop_back();
  }

  void bucket_add(Buckets& bk, int item, int count) {
    bk.slot[item] = static_cast<int>(bk.items[count].size());
    bk.items[count].push_back(item);
  }

  // Builds blocks one at a time from the items with the most occurrences
  // left, never reusing a pair. Stops at the first block it cannot complete.
  void greedy() {
    const int num_blocks = 2 * n_;
    remaining_.assign(n_, kOccurrencesPerItem);
    partners_.assign(n_, {});
    Buckets bk;
    bk.slot.assign(n_, 0);
    for (int i = 0; i < n_; ++i) bucket_add(bk, i, kOccurrencesPerItem);

    while (static_cast<int>(blocks_.size()) < num_blocks) {
      Block block{};
      int filled = 0;
      for (int c = kOccurrencesPerItem; c > 0 && filled < kTupleSize; --c) {
        const auto& cand = bk.items[c];
        const std::size_t size = cand.size();
        if (size == 0) continue;
        const std::size_t offset = rng_.below(size);
        for (std::size_t k = 0; k < size && filled < kTupleSize; ++k) {
          const int item = cand[(offset + k) % size];
          bool ok = true;
          for (int j = 0; j < filled && ok; ++j) {
            ok = block[j] != item && !used_pair(block[j], item);
          }
          if (ok) block[filled++] = item;
        }
      }
      if (filled < kTupleSize) return;
      for (int j = 0; j < kTupleSize; ++j) {
        const int item = block[j];
        bucket_remove(bk, item, remaining_[item]);
        --remaining_[item];
        if (remaining_[item] > 0) bucket_add(bk, item, remaining_[item]);
        for (int k = 0; k < kTupleSize; ++k) {
          if (k != j) partners_[item].push_back(block[k]);
        }
      }
      blocks_.push_back(block);
    }
  }

  // Distributes the unplaced occurrences over the missing blocks so that no
  // block holds the same item twice. Pairs may repeat; repair() fixes them.
  bool deal_leftovers() {
    const int missing = 2 * n_ - static_cast<int>(blocks_.size());
    if (missing == 0) return true;
    std::vector<int> slots;
    for (int i = 0; i < n_; ++i) {
      if (remaining_[i] > missing) return false;
      for (int k = 0; k < remaining_[i]; ++k) slots.push_back(i);
    }
    std::vector<Block> extra(missing);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      extra[s % missing][s / missing] = slots[s];
    }
    for (const Block& b : extra) blocks_.push_back(b);
    return true;
  }

  int pair_count(int a, int b) const {
    int count = 0;
    for (int blk : item_blocks_[a]) {
      const Block& block = blocks_[blk];
      if (std::find(block.begin(), block.end(), b) != block.end()) ++count;
    }
    return count;
  }

  static std::pair<int, int> ordered(int a, int b) {
    return a < b ? std::pair(a, b) : std::pair(b, a);
  }

  // Pairs whose count changes when `u` in block `from` trades places with
  // `v` in block `to`.
  void affected_pairs(int from, int u, int to, int v,
                      std::vector<std::pair<int, int>>& out) const {
    out.clear();
    auto add = [&](int a, int b) {
      const auto p = ordered(a, b);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };
    for (int z : blocks_[from]) {
      if (z == u) continue;
      add(u, z);
      add(v, z);
    }
    for (int w : blocks_[to]) {
      if (w == v) continue;
      add(v, w);
      add(u, w);
    }
  }

  int excess(const std::vector<std::pair<int, int>>& pairs) const {
    int e = 0;
    for (const auto& [a, b] : pairs) e += std::max(0, pair_count(a, b) - 1);
    return e;
  }

  void swap_items(int from, int u, int to, int v) {
    *std::find(blocks_[from].begin(), blocks_[from].end(), u) = v;
    *std::find(blocks_[to].begin(), blocks_[to].end(), v) = u;
    *std::find(item_blocks_[u].begin(), item_blocks_[u].end(), from) = to;
    *std::find(item_blocks_[v].begin(), item_blocks_[v].end(), to) = from;
  }

  // Conflict-directed local search over occurrence-preserving swaps.
  bool repair() {
    const int num_blocks = static_cast<int>(blocks_.size());
    item_blocks_.assign(n_, {});
    for (int b = 0; b < num_blocks; ++b) {
      for (int item : blocks_[b]) item_blocks_[item].push_back(b);
    }
    std::vector<std::pair<int, int>> conflicts;
    int total = 0;
    {
      std::map<std::pair<int, int>, int> counts;
      for (const Block& b : blocks_) {
        for (int i = 0; i < kTupleSize; ++i) {
          for (int j = i + 1; j < kTupleSize; ++j) {
            ++counts[ordered(b[i], b[j])];
          }
        }
      }
      for (const auto& [p, c] : counts) {
        if (c > 1) {
          conflicts.push_back(p);
          total += c - 1;
        }
      }
    }

    constexpr int kCandidates = 30;
    constexpr double kTemperature = 0.15;
    const long long max_steps = 400000LL + 4000LL * n_;
    std::vector<std::pair<int, int>> pairs;
    for (long long step = 0; total > 0 && step < max_steps; ++step) {
      const std::size_t pick = rng_.below(conflicts.size());
      const auto [a, b] = conflicts[pick];
      if (pair_count(a, b) < 2) {
        conflicts[pick] = conflicts.back();
        conflicts.pop_back();
        continue;
      }
      // A block holding the repeated pair, and which member to move out.
      std::vector<int> shared;
      for (int blk : item_blocks_[a]) {
        const Block& block = blocks_[blk];
        if (std::find(block.begin(), block.end(), b) != block.end()) {
          shared.push_back(blk);
        }
      }
      const int from = shared[rng_.below(shared.size())];
      const int u = rng_.bernoulli(0.5) ? a : b;

      int best_delta = 0;
      int best_to = -1;
      int best_v = -1;
      int ties = 0;
      for (int c = 0; c < kCandidates; ++c) {
        const int to = static_cast<int>(rng_.below(num_blocks));
        if (to == from) continue;
        const int v = blocks_[to][rng_.below(kTupleSize)];
        const Block& fb = blocks_[from];
        const Block& tb = blocks_[to];
        if (std::find(fb.begin(), fb.end(), v) != fb.end()) continue;
        if (std::find(tb.begin(), tb.end(), u) != tb.end()) continue;
        affected_pairs(from, u, to, v, pairs);
        const int before = excess(pairs);
        swap_items(from, u, to, v);
        const int delta = excess(pairs) - before;
        swap_items(from, v, to, u);
        if (best_to < 0 || delta < best_delta) {
          best_delta = delta;
          best_to = to;
          best_v = v;
          ties = 1;
        } else if (delta == best_delta && rng_.below(++ties) == 0) {
          best_to = to;
          best_v = v;
        }
      }
      if (best_to < 0) continue;
      if (best_delta > 0 &&
          !rng_.bernoulli(std::exp(-best_delta / kTemperature))) {
        continue;
      }
      affected_pairs(from, u, best_to, best_v, pairs);
      swap_items(from, u, best_to, best_v);
      total += best_delta;
      for (const auto& p : pairs) {
        if (pair_count(p.first, p.second) > 1) conflicts.push_back(p);
      }
    }
    return total == 0;
  }

  int n_;
  Random& rng_;
  std::vector<int> remaining_;
  std::vector<std::vector<int>> partners_;
  std::vector<Block> blocks_;
  std::vector<std::vector<int>> item_blocks_;
};

std::string tuple_id(std::size_t index, std::size_t total) {
  std::string digits = std::to_string(index + 1);
  const std::size_t width = std::max<std::size_t>(
      4, std::to_string(total).size());
  return "t" + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

}  // namespace

TupleSet generate_tuples(const std::vector<std::string>& items,
                         std::uint64_t seed, int max_restarts) {
  if (items.size() < kMinItems) {
    throw InfeasibleDesignError(
        "need at least " + std::to_string(kMinItems) + " items, got " +
        std::to_string(items.size()) + ": each item must meet " +
        std::to_string(kPartnersPerItem) + " distinct partners (" +
        std::to_string(kOccurrencesPerItem) + " tuples x " +
        std::to_string(kTupleSize - 1) + " partners each)");
  }
  std::unordered_set<std::string> distinct;
  for (const std::string& id : items) {
    if (id.empty()) throw InvalidArgument("empty item id");
    if (!distinct.insert(id).second) {
      throw InvalidArgument("duplicate item id '" + id + "'");
    }
  }
  if (max_restarts < 0) throw InvalidArgument("max_restarts must be >= 0");

  const int n = static_cast<int>(items.size());
  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    Random rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    DesignSearch search(n, rng);
    auto blocks = search.run();
    if (!blocks) continue;

    rng.shuffle(std::span(*blocks));
    TupleSet ts;
    ts.items = items;
    ts.seed = seed;
    ts.tuples.reserve(blocks->size());
    for (std::size_t b = 0; b < blocks->size(); ++b) {
      Block& block = (*blocks)[b];
      rng.shuffle(std::span(block));
      Tuple4 t;
      t.tuple_id = tuple_id(b, blocks->size());
      for (int k = 0; k < kTupleSize; ++k) t.items[k] = items[block[k]];
      ts.tuples.push_back(std::move(t));
    }
    return ts;
  }
  throw TupleSearchError("tuple search failed after " +
                         std::to_string(max_restarts + 1) +
                         " attempt(s) for " + std::to_string(n) +
                         " items; try a different seed or more items "
                         "(30 or more converge quickly)");
}

std::vector<TupleViolation> validate_tuple_set(const TupleSet& ts) {
  using Kind = TupleViolation::Kind;
  std::vector<TupleViolation> out;
  const std::size_t expected = 2 * ts.items.size();
  if (ts.tuples.size() != expected) {
    out.push_back({Kind::kCount,
                   "tuple count " + std::to_string(ts.tuples.size()) +
                       " ≠ " + std::to_string(expected),
                   {}});
  }

  std::unordered_map<std::string, int> occurrences;
  for (const std::string& id : ts.items) occurrences.emplace(id, 0);
  std::set<std::string> unknown;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      pair_tuples;
  std::map<std::vector<std::string>, std::vector<std::string>> by_content;

  for (const Tuple4& t : ts.tuples) {
    std::set<std::string> distinct(t.items.begin(), t.items.end());
    if (distinct.size() != kTupleSize) {
      out.push_back({Kind::kMalformedTuple,
                     "tuple " + t.tuple_id + " repeats an item",
                     {t.tuple_id}});
    }
    for (const std::string& id : distinct) {
      auto it = occurrences.find(id);
      if (it == occurrences.end()) {
        unknown.insert(id);
      } else {
        ++it->second;
      }
    }
    std::vector<std::string> sorted(distinct.begin(), distinct.end());
    by_content[sorted].push_back(t.tuple_id);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        pair_tuples[{sorted[i], sorted[j]}].push_back(t.tuple_id);
      }
    }
  }

  for (const std::string& id : unknown) {
    out.push_back({Kind::kUnknownItem,
                   "item " + id + " is not in the item universe", {id}});
  }
  for (const std::string& id : ts.items) {
    const int c = occurrences[id];
    if (c != kOccurrencesPerItem) {
      out.push_back({Kind::kOccurrence,
                     "item " + id + " occurs in " + std::to_string(c) +
                         " tuples ≠ " +
                         std::to_string(kOccurrencesPerItem),
                     {id}});
    }
  }
  for (const auto& [content, ids] : by_content) {
    if (ids.size() > 1) {
      out.push_back({Kind::kDuplicateTuple,
                     "tuples " + join(ids, ", ") + " hold the same items",
                     ids});
    }
  }
  for (const auto& [pair, ids] : pair_tuples) {
    if (ids.size() > 1) {
      out.push_back({Kind::kRepeatedPair,
                     "pair (" + pair.first + ", " + pair.second +
                         ") occurs in " + std::to_string(ids.size()) +
                         " tuples: " + join(ids, ", "),
                     {pair.first, pair.second}});
    }
  }
  return out;
}

std::string format_tuples(const TupleSet& ts) {
  std::string out;
  for (const Tuple4& t : ts.tuples) {
    out += t.tuple_id;
    for (const std::string& id : t.items) {
      out += '\t';
      out += id;
    }
    out += '\n';
  }
  return out;
}

void write_tuples(const TupleSet& ts, const std::string& path) {
  write_file(path, format_tuples(ts));
}

TupleSet parse_tuples_text(std::string_view text, const std::string& source) {
  TupleSet ts;
  std::unordered_set<std::string> seen_items;
  std::unordered_set<std::string> seen_tuples;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 1 + kTupleSize) {
      throw ParseError(source, i + 1,
                       "expected tuple_id and 4 item ids, found " +
                           std::to_string(cols.size()) + " columns");
    }
    Tuple4 t;
    t.tuple_id = std::string(cols[0]);
    if (!seen_tuples.insert(t.tuple_id).second) {
      throw ParseError(source, i + 1,
                       "duplicate tuple id '" + t.tuple_id + "'");
    }
    for (int k = 0; k < kTupleSize; ++k) {
      t.items[k] = std::string(cols[k + 1]);
      if (t.items[k].empty()) throw ParseError(source, i + 1, "empty item id");
      if (seen_items.insert(t.items[k]).second) ts.items.push_back(t.items[k]);
    }
    ts.tuples.push_back(std::move(t));
  }
  return ts;
}

TupleSet read_tuples(const std::string& path) {
  return parse_tuples_text(read_file(path), path);
}

std::vector<std::string> read_item_list(const std::string& path) {
  std::vector<std::string> items;
  std::unordered_set<std::string> seen;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view id = trim(lines[i]);
    if (id.empty()) continue;
    if (!seen.insert(std::string(id)).second) {
      throw ParseError(path, i + 1, "duplicate item id '" + std::string(id) + "'");
    }
    items.emplace_back(id);
  }
  return items;
}

}  // namespace emoint
