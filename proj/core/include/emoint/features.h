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

// Tweet feature extraction: word and character n-grams, aggregated word
// embeddings and lexicon counts/sums, assembled into a FeatureMatrix whose
// sparse vocabulary is fitted on training data and frozen afterwards.

#ifndef EMOINT_FEATURES_H_
#define EMOINT_FEATURES_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emoint/dataset.h"
#include "emoint/feature_matrix.h"
#include "emoint/resources.h"
#include "emoint/tokenizer.h"

namespace emoint {

using SparseFeatures = std::map<std::string, double>;

// Presence features "WN:<n>:<w1 ... wn>" for n in [n_min, n_max].
SparseFeatures word_ngrams(std::span<const std::string> tokens, int n_min = 1,
                           int n_max = 4);

// Presence features "CN:<n>:<chars>" over UTF-8 code points of `text`.
SparseFeatures char_ngrams(std::string_view text, int n_min = 3, int n_max = 5);

struct EmbeddingScheme {
  enum class Kind { kAverage, kAdd, kConcatFirstK };
  Kind kind = Kind::kAverage;
  int k = 0;  // kConcatFirstK only

  std::size_t width(std::size_t dimension) const {
    return kind == Kind::kConcatFirstK ? dimension * static_cast<std::size_t>(k)
                                       : dimension;
  }
};

// Parses "average", "add" or "concat:<k>".
std::optional<EmbeddingScheme> parse_embedding_scheme(std::string_view s);

// Average and add run over in-vocabulary tokens (all OOV -> zero vector).
// concat:k lays out the vectors of the first k tokens, with zeros for OOV
// tokens and for positions past the end of a short tweet.
std::vector<double> embedding_features(std::span<const std::string> tokens,
                                       const EmbeddingTable& table,
                                       const EmbeddingScheme& scheme);

// One value per class of each lexicon, lexicons in order. Nominal lexicons
// count matching tokens per class; numeric lexicons sum entry values. With
// strip_neg, "NEG-word" matches as "word". Tokens are matched lowercased.
std::vector<double> lexicon_features(std::span<const std::string> tokens,
                                     std::span<const Lexicon> lexicons,
                                     bool strip_neg = true);

struct FeatureBlocks {
  bool word_ngrams = false;  // WN
  bool char_ngrams = false;  // CN
  bool embeddings = false;   // WE
  bool lexicons = false;     // L

  bool any() const { return word_ngrams || char_ngrams || embeddings || lexicons; }
  // "WN + CN + WE + L" in that canonical order.
  std::string label() const;
};

// Accepts codes separated by '+' or ',' with optional spaces: "WE+L".
std::optional<FeatureBlocks> parse_feature_blocks(std::string_view s);

struct FeatureConfig {
  FeatureBlocks blocks;
  int word_n_min = 1;
  int word_n_max = 4;
  int char_n_min = 3;
  int char_n_max = 5;
  bool negation = true;              // NEG- marking for word n-grams
  bool lowercase_words = true;       // WN, WE and lexicon tokens
  bool lowercase_chars = false;      // CN text
  bool strip_neg_for_lexicons = true;
  EmbeddingScheme embedding_scheme;
};

struct FeatureResources {
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::vector<Lexicon> lexicons;
  std::set<std::string> negators = default_negators();
};

// Sparse and dense features of one tweet.
struct FeatureVector {
  SparseFeatures sparse;
  std::vector<double> dense;
};

class FeatureExtractor {
 public:
  // Throws InvalidArgument when no block is selected or a selected block
  // lacks its resource.
  FeatureExtractor(FeatureConfig config, FeatureResources resources);

  FeatureVector extract(std::string_view text) const;

  // Fixes the sparse vocabulary to the features seen in `train`.
  void fit(const Dataset& train);
  // Unseen sparse features are dropped; requires fit() or set_vocabulary().
  FeatureMatrix transform(const Dataset& ds) const;
  FeatureMatrix fit_transform(const Dataset& train);

  bool fitted() const { return fitted_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  void set_vocabulary(std::vector<std::string> vocabulary);

  std::vector<std::string> column_names() const;
  const FeatureConfig& config() const { return config_; }

  // Text file holding the config and the fitted vocabulary. Resources are not
  // stored; load() takes them again and the layout digest guards against a
  // mismatch.
  void save_layout(const std::string& path) const;
  static FeatureExtractor load_layout(const std::string& path,
                                      FeatureResources resources);

 private:
  std::vector<std::string> dense_names() const;

  FeatureConfig config_;
  FeatureResources resources_;
  bool fitted_ = false;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::uint32_t> column_of_;
};

// fit_transform of a fresh extractor.
FeatureMatrix build_feature_matrix(const Dataset& ds, const FeatureConfig& config,
                                   const FeatureResources& resources);

}  // namespace emoint

#endif  // EMOINT_FEATURES_H_
