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

#include "emoint/features.h"

#include <algorithm>

#include "emoint/error.h"
#include "emoint/text.h"

namespace emoint {

SparseFeatures word_ngrams(std::span<const std::string> tokens, int n_min,
                           int n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw InvalidArgument("word n-gram range must satisfy 1 <= n_min <= n_max");
  }
  SparseFeatures out;
  for (int n = n_min; n <= n_max; ++n) {
    const std::string prefix = "WN:" + std::to_string(n) + ":";
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = prefix;
      for (int k = 0; k < n; ++k) {
        if (k > 0) key += ' ';
        key += tokens[i + k];
      }
      out[key] = 1.0;
    }
  }
  return out;
}

SparseFeatures char_ngrams(std::string_view text, int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw InvalidArgument("char n-gram range must satisfy 1 <= n_min <= n_max");
  }
  // Byte offsets of code point starts, plus the end.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  starts.push_back(text.size());
  const std::size_t chars = starts.size() - 1;
  SparseFeatures out;
  for (int n = n_min; n <= n_max; ++n) {
    const std::string prefix = "CN:" + std::to_string(n) + ":";
    for (std::size_t i = 0; i + n <= chars; ++i) {
      out[prefix + std::string(text.substr(starts[i], starts[i + n] - starts[i]))] =
          1.0;
    }
  }
  return out;
}

std::optional<EmbeddingScheme> parse_embedding_scheme(std::string_view s) {
  s = trim(s);
  if (s == "average") return EmbeddingScheme{EmbeddingScheme::Kind::kAverage, 0};
  if (s == "add") return EmbeddingScheme{EmbeddingScheme::Kind::kAdd, 0};
  constexpr std::string_view kConcat = "concat:";
  if (s.substr(0, kConcat.size()) == kConcat) {
    const auto k = parse_int(s.substr(kConcat.size()));
    if (k && *k > 0) {
      return EmbeddingScheme{EmbeddingScheme::Kind::kConcatFirstK,
                             static_cast<int>(*k)};
    }
  }
  return std::nullopt;
}

namespace {

std::string scheme_name(const EmbeddingScheme& s) {
  switch (s.kind) {
    case EmbeddingScheme::Kind::kAverage:
      return "average";
    case EmbeddingScheme::Kind::kAdd:
      return "add";
    case EmbeddingScheme::Kind::kConcatFirstK:
      return "concat:" + std::to_string(s.k);
  }
  return "average";
}

}  // namespace

std::vector<double> embedding_features(std::span<const std::string> tokens,
                                       const EmbeddingTable& table,
                                       const EmbeddingScheme& scheme) {
  const std::size_t dim = table.dimension();
  std::vector<double> out(scheme.width(dim), 0.0);
  if (scheme.kind == EmbeddingScheme::Kind::kConcatFirstK) {
    const std::size_t k = static_cast<std::size_t>(scheme.k);
    for (std::size_t i = 0; i < std::min(k, tokens.size()); ++i) {
      if (const auto* v = table.find(tokens[i])) {
        std::copy(v->begin(), v->end(), out.begin() + i * dim);
      }
    }
    return out;
  }
  std::size_t found = 0;
  for (const std::string& tok : tokens) {
    const auto* v = table.find(tok);
    if (v == nullptr) continue;
    ++found;
    for (std::size_t d = 0; d < dim; ++d) out[d] += (*v)[d];
  }
  if (scheme.kind == EmbeddingScheme::Kind::kAverage && found > 1) {
    for (double& x : out) x /= static_cast<double>(found);
  }
  return out;
}

std::vector<double> lexicon_features(std::span<const std::string> tokens,
                                     std::span<const Lexicon> lexicons,
                                     bool strip_neg) {
  std::size_t width = 0;
  std::vector<std::size_t> offset;
  for (const Lexicon& lex : lexicons) {
    offset.push_back(width);
    width += lex.classes().size();
  }
  std::vector<double> out(width, 0.0);
  for (const std::string& raw : tokens) {
    const std::string tok =
        to_lower(strip_neg ? strip_negation(raw) : std::string_view(raw));
    for (std::size_t l = 0; l < lexicons.size(); ++l) {
      const bool nominal = lexicons[l].mode() == LexiconMode::kNominal;
      for (const Lexicon::Entry& e : lexicons[l].lookup(tok)) {
        out[offset[l] + e.class_index] += nominal ? 1.0 : e.value;
      }
    }
  }
  return out;
}

std::string FeatureBlocks::label() const {
  std::vector<std::string> parts;
  if (word_ngrams) parts.emplace_back("WN");
  if (char_ngrams) parts.emplace_back("CN");
  if (embeddings) parts.emplace_back("WE");
  if (lexicons) parts.emplace_back("L");
  return join(parts, " + ");
}

std::optional<FeatureBlocks> parse_feature_blocks(std::string_view s) {
  FeatureBlocks b;
  std::string normalized(s);
  std::replace(normalized.begin(), normalized.end(), ',', '+');
  for (std::string_view part : split(normalized, '+')) {
    part = trim(part);
    if (part.empty()) continue;
    const std::string code = to_lower(part);
    if (code == "wn") {
      b.word_ngrams = true;
    } else if (code == "cn") {
      b.char_ngrams = true;
    } else if (code == "we") {
      b.embeddings = true;
    } else if (code == "l") {
      b.lexicons = true;
    } else {
      return std::nullopt;
    }
  }
  return b;
}

FeatureExtractor::FeatureExtractor(FeatureConfig config,
                                   FeatureResources resources)
    : config_(std::move(config)), resources_(std::move(resources)) {
  const FeatureBlocks& b = config_.blocks;
  if (!b.any()) throw InvalidArgument("no feature blocks selected");
  if (b.embeddings && (!resources_.embeddings || resources_.embeddings->empty())) {
    throw InvalidArgument("WE block selected but no embeddings loaded");
  }
  if (b.lexicons && resources_.lexicons.empty()) {
    throw InvalidArgument("L block selected but no lexicons loaded");
  }
  if (b.embeddings && config_.embedding_scheme.kind ==
                          EmbeddingScheme::Kind::kConcatFirstK &&
      config_.embedding_scheme.k < 1) {
    throw InvalidArgument("concat embedding scheme needs k >= 1");
  }
  // Validate the n-gram ranges up front.
  if (b.word_ngrams) word_ngrams({}, config_.word_n_min, config_.word_n_max);
  if (b.char_ngrams) char_ngrams("", config_.char_n_min, config_.char_n_max);
  // Only dense blocks: nothing to fit.
  if (!b.word_ngrams && !b.char_ngrams) fitted_ = true;
}

FeatureVector FeatureExtractor::extract(std::string_view text) const {
  FeatureVector fv;
  const FeatureBlocks& b = config_.blocks;
  const TokenSequence plain =
      tokenize(text, TokenizerOptions{config_.lowercase_words});
  const TokenSequence& marked =
      config_.negation ? mark_negation(plain, resources_.negators) : plain;
  if (b.word_ngrams) {
    fv.sparse.merge(
        word_ngrams(marked.tokens, config_.word_n_min, config_.word_n_max));
  }
  if (b.char_ngrams) {
    const std::string chars =
        config_.lowercase_chars ? to_lower(text) : std::string(text);
    fv.sparse.merge(char_ngrams(chars, config_.char_n_min, config_.char_n_max));
  }
  if (b.embeddings) {
    const auto v = embedding_features(plain.tokens, *resources_.embeddings,
                                      config_.embedding_scheme);
    fv.dense.insert(fv.dense.end(), v.begin(), v.end());
  }
  if (b.lexicons) {
    const auto v = lexicon_features(marked.tokens, resources_.lexicons,
                                    config_.strip_neg_for_lexicons);
    fv.dense.insert(fv.dense.end(), v.begin(), v.end());
  }
  return fv;
}

void FeatureExtractor::fit(const Dataset& train) {
  std::set<std::string> seen;
  if (config_.blocks.word_ngrams || config_.blocks.char_ngrams) {
    for (const Tweet& t : train.tweets()) {
      for (auto& [name, _] : extract(t.text).sparse) seen.insert(name);
    }
  }
  set_vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
}

void FeatureExtractor::set_vocabulary(std::vector<std::string> vocabulary) {
  column_of_.clear();
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    if (!column_of_.emplace(vocabulary[i], static_cast<std::uint32_t>(i)).second) {
      throw InvalidArgument("duplicate feature '" + vocabulary[i] + "'");
    }
  }
  vocabulary_ = std::move(vocabulary);
  fitted_ = true;
}

std::vector<std::string> FeatureExtractor::dense_names() const {
  std::vector<std::string> names;
  if (config_.blocks.embeddings) {
    const std::size_t w =
        config_.embedding_scheme.width(resources_.embeddings->dimension());
    for (std::size_t i = 0; i < w; ++i) names.push_back("WE:" + std::to_string(i));
  }
  if (config_.blocks.lexicons) {
    for (const Lexicon& lex : resources_.lexicons) {
      for (const std::string& cls : lex.classes()) {
        names.push_back("L:" + lex.name() + ":" + cls);
      }
    }
  }
  return names;
}

std::vector<std::string> FeatureExtractor::column_names() const {
  std::vector<std::string> names = vocabulary_;
  for (std::string& n : dense_names()) names.push_back(std::move(n));
  return names;
}

FeatureMatrix FeatureExtractor::transform(const Dataset& ds) const {
  if (!fitted_) throw InvalidArgument("feature extractor used before fit()");
  FeatureMatrix m(column_names(), vocabulary_.size());
  for (const Tweet& t : ds.tweets()) {
    FeatureVector fv = extract(t.text);
    std::vector<FeatureMatrix::SparseEntry> row;
    for (const auto& [name, value] : fv.sparse) {
      if (auto it = column_of_.find(name); it != column_of_.end()) {
        row.emplace_back(it->second, value);
      }
    }
    std::sort(row.begin(), row.end());
    m.add_row(std::move(row), fv.dense);
  }
  return m;
}

FeatureMatrix FeatureExtractor::fit_transform(const Dataset& train) {
  fit(train);
  return transform(train);
}

namespace {

constexpr std::string_view kLayoutMagic = "emoint-feature-layout 1";

}  // namespace

void FeatureExtractor::save_layout(const std::string& path) const {
  std::string out(kLayoutMagic);
  out += "\nblocks " + config_.blocks.label();
  out += "\nword_ngrams " + std::to_string(config_.word_n_min) + " " +
         std::to_string(config_.word_n_max);
  out += "\nchar_ngrams " + std::to_string(config_.char_n_min) + " " +
         std::to_string(config_.char_n_max);
  out += "\nnegation " + std::to_string(config_.negation);
  out += "\nlowercase_words " + std::to_string(config_.lowercase_words);
  out += "\nlowercase_chars " + std::to_string(config_.lowercase_chars);
  out += "\nstrip_neg_for_lexicons " +
         std::to_string(config_.strip_neg_for_lexicons);
  out += "\nembedding_scheme " + scheme_name(config_.embedding_scheme);
  out += "\nvocabulary " + std::to_string(vocabulary_.size()) + "\n";
  for (const std::string& v : vocabulary_) out += v + "\n";
  write_file(path, out);
}

FeatureExtractor FeatureExtractor::load_layout(const std::string& path,
                                               FeatureResources resources) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kLayoutMagic) {
    throw ParseError(path, 1, "not a feature layout file");
  }
  FeatureConfig config;
  std::size_t i = 1;
  std::optional<std::size_t> vocab_size;
  auto flag = [&](std::string_view v) {
    if (v == "1") return true;
    if (v == "0") return false;
    throw ParseError(path, i + 1, "expected 0 or 1");
  };
  auto range = [&](std::string_view v, int& lo, int& hi) {
    const auto parts = split_whitespace(v);
    if (parts.size() != 2 || !parse_int(parts[0]) || !parse_int(parts[1])) {
      throw ParseError(path, i + 1, "expected two integers");
    }
    lo = static_cast<int>(*parse_int(parts[0]));
    hi = static_cast<int>(*parse_int(parts[1]));
  };
  for (; i < lines.size() && !vocab_size; ++i) {
    const std::string_view line = lines[i];
    const std::size_t sp = line.find(' ');
    const std::string_view key = line.substr(0, sp);
    const std::string_view value =
        sp == std::string_view::npos ? std::string_view() : line.substr(sp + 1);
    if (key == "blocks") {
      const auto b = parse_feature_blocks(value);
      if (!b) throw ParseError(path, i + 1, "bad feature blocks");
      config.blocks = *b;
    } else if (key == "word_ngrams") {
      range(value, config.word_n_min, config.word_n_max);
    } else if (key == "char_ngrams") {
      range(value, config.char_n_min, config.char_n_max);
    } else if (key == "negation") {
      config.negation = flag(value);
    } else if (key == "lowercase_words") {
      config.lowercase_words = flag(value);
    } else if (key == "lowercase_chars") {
      config.lowercase_chars = flag(value);
    } else if (key == "strip_neg_for_lexicons") {
      config.strip_neg_for_lexicons = flag(value);
    } else if (key == "embedding_scheme") {
      const auto s = parse_embedding_scheme(value);
      if (!s) throw ParseError(path, i + 1, "bad embedding scheme");
      config.embedding_scheme = *s;
    } else if (key == "vocabulary") {
      const auto n = parse_int(value);
      if (!n || *n < 0) throw ParseError(path, i + 1, "bad vocabulary size");
      vocab_size = static_cast<std::size_t>(*n);
    } else {
      throw ParseError(path, i + 1, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!vocab_size) throw ParseError(path, 0, "missing vocabulary section");
  if (lines.size() - i != *vocab_size) {
    throw ParseError(path, 0,
                     "vocabulary section has " + std::to_string(lines.size() - i) +
                         " entries, header says " + std::to_string(*vocab_size));
  }
  FeatureExtractor fx(config, std::move(resources));
  fx.set_vocabulary(std::vector<std::string>(lines.begin() + i, lines.end()));
  return fx;
}

FeatureMatrix build_feature_matrix(const Dataset& ds, const FeatureConfig& config,
                                   const FeatureResources& resources) {
  FeatureExtractor fx(config, resources);
  return fx.fit_transform(ds);
}

}  // namespace emoint
