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

// Independent reference implementations used as test oracles. They are
// deliberately naive (quadratic ranks, long double sums, per-item rescans)
// and share no code with the library.

#ifndef EMOINT_TESTS_ORACLES_H_
#define EMOINT_TESTS_ORACLES_H_

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "emoint/bws.h"
#include "emoint/random.h"
#include "emoint/tuples.h"

namespace emoint::testing {

inline long double oracle_mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

// r = sum (x - mx)(y - my) / sqrt(sum (x - mx)^2 * sum (y - my)^2)
inline double oracle_pearson(const std::vector<double>& x,
                             const std::vector<double>& y) {
  const long double mx = oracle_mean(x), my = oracle_mean(y);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// Rank of x_i: 1 + #{x_j < x_i} + (#{x_j == x_i} - 1) / 2.
inline std::vector<double> oracle_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = 1.0 + less + (equal - 1) / 2.0;
  }
  return r;
}

inline double oracle_spearman(const std::vector<double>& x,
                              const std::vector<double>& y) {
  return oracle_pearson(oracle_ranks(x), oracle_ranks(y));
}

struct OracleScore {
  int best = 0;
  int worst = 0;
  int seen = 0;
  double scaled() const { return ((best - worst) / double(seen) + 1.0) / 2.0; }
};

// For every item, rescans all non-gold responses.
inline std::map<std::string, OracleScore> oracle_counts(
    const TupleSet& ts, const std::vector<BwsResponse>& responses) {
  std::map<std::string, OracleScore> out;
  for (const std::string& item : ts.items) {
    OracleScore s;
    for (const BwsResponse& r : responses) {
      if (r.is_gold) continue;
      const Tuple4* t = ts.find(r.tuple_id);
      bool in = false;
      for (const std::string& i : t->items) in = in || i == item;
      if (!in) continue;
      ++s.seen;
      if (r.best == item) ++s.best;
      if (r.worst == item) ++s.worst;
    }
    if (s.seen > 0) out[item] = s;
  }
  return out;
}

// Annotators pick the max-latent item as best and the min-latent item as
// worst; with probability `corrupt` a judgment is replaced by a uniformly
// random ordered pair of distinct items.
inline std::vector<BwsResponse> simulate_responses(
    const TupleSet& ts, const std::map<std::string, double>& latent,
    int per_tuple, double corrupt, std::uint64_t seed) {
  Random rng(seed);
  std::vector<BwsResponse> out;
  for (const Tuple4& t : ts.tuples) {
    for (int a = 0; a < per_tuple; ++a) {
      BwsResponse r;
      r.tuple_id = t.tuple_id;
      r.annotator_id = "sim" + std::to_string(a);
      if (rng.bernoulli(corrupt)) {
        const std::size_t b = rng.below(4);
        std::size_t w = rng.below(3);
        if (w >= b) ++w;
        r.best = t.items[b];
        r.worst = t.items[w];
      } else {
        r.best = t.items[0];
        r.worst = t.items[0];
        for (const std::string& i : t.items) {
          if (latent.at(i) > latent.at(r.best)) r.best = i;
          if (latent.at(i) < latent.at(r.worst)) r.worst = i;
        }
      }
      out.push_back(r);
    }
  }
  return out;
}

inline std::vector<std::string> numbered_items(int n, const std::string& prefix = "i") {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace emoint::testing

#endif  // EMOINT_TESTS_ORACLES_H_
