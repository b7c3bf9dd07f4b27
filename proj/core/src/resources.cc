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

#include "emoint/resources.h"

#include <algorithm>
#include <filesystem>
#include <optional>

#include "emoint/error.h"
#include "emoint/text.h"

namespace emoint {

Lexicon Lexicon::load(const std::string& path, std::string name) {
  if (name.empty()) name = std::filesystem::path(path).stem().string();
  return parse(read_file(path), std::move(name), path);
}

Lexicon Lexicon::parse(std::string_view text, std::string name,
                       const std::string& source) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(source, 1, "missing #mode header");
  const std::string_view header = trim(lines[0]);
  LexiconMode mode;
  if (header == "#mode=nominal") {
    mode = LexiconMode::kNominal;
  } else if (header == "#mode=numeric") {
    mode = LexiconMode::kNumeric;
  } else {
    throw ParseError(source, 1,
                     "expected '#mode=nominal' or '#mode=numeric', found '" +
                         std::string(header) + "'");
  }
  Lexicon lex(std::move(name), mode);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) {
      throw ParseError(source, i + 1,
                       "expected word<TAB>class<TAB>value, found " +
                           std::to_string(cols.size()) + " columns");
    }
    if (cols[0].empty() || cols[1].empty()) {
      throw ParseError(source, i + 1, "empty word or class");
    }
    const auto value = parse_double(trim(cols[2]));
    if (!value) {
      throw ParseError(source, i + 1,
                       "unparseable value '" + std::string(cols[2]) + "'");
    }
    if (mode == LexiconMode::kNominal && *value != 1.0) {
      throw ParseError(source, i + 1, "nominal lexicon values must be 1");
    }
    lex.add(cols[0], cols[1], *value);
  }
  return lex;
}

void Lexicon::add(std::string_view word, std::string_view cls, double value) {
  auto it = std::find(classes_.begin(), classes_.end(), cls);
  int index;
  if (it == classes_.end()) {
    index = static_cast<int>(classes_.size());
    classes_.emplace_back(cls);
  } else {
    index = static_cast<int>(it - classes_.begin());
  }
  auto& entries = entries_[to_lower(word)];
  for (Entry& e : entries) {
    if (e.class_index == index) {
      e.value = value;
      return;
    }
  }
  entries.push_back({index, value});
}

const std::vector<Lexicon::Entry>& Lexicon::lookup(std::string_view word) const {
  static const std::vector<Entry> kEmpty;
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? kEmpty : it->second;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  return parse(read_file(path), path);
}

EmbeddingTable EmbeddingTable::parse(std::string_view text,
                                     const std::string& source) {
  const auto lines = split_lines(text);
  std::size_t first = 0;
  std::size_t dim = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first < lines.size()) {
    const auto head = split_whitespace(lines[first]);
    if (head.size() == 2 && parse_int(head[0]) && parse_int(head[1]) &&
        *parse_int(head[1]) > 0) {
      dim = static_cast<std::size_t>(*parse_int(head[1]));
      ++first;
    }
  }
  std::optional<EmbeddingTable> table;
  if (dim > 0) table.emplace(dim);
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto cols = split_whitespace(lines[i]);
    if (cols.empty()) continue;
    if (cols.size() < 2) {
      throw ParseError(source, i + 1, "expected a word followed by values");
    }
    if (!table) table.emplace(cols.size() - 1);
    if (cols.size() - 1 != table->dimension()) {
      throw ParseError(source, i + 1,
                       "vector has " + std::to_string(cols.size() - 1) +
                           " values, expected " +
                           std::to_string(table->dimension()));
    }
    std::vector<double> v;
    v.reserve(cols.size() - 1);
    for (std::size_t k = 1; k < cols.size(); ++k) {
      const auto x = parse_double(cols[k]);
      if (!x) {
        throw ParseError(source, i + 1,
                         "unparseable value '" + std::string(cols[k]) + "'");
      }
      v.push_back(*x);
    }
    table->add(std::string(cols[0]), std::move(v));
  }
  if (!table) throw ParseError(source, 0, "no embeddings found");
  return std::move(*table);
}

void EmbeddingTable::add(std::string word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw InvalidArgument("embedding for '" + word + "' has dimension " +
                          std::to_string(vector.size()) + ", expected " +
                          std::to_string(dimension_));
  }
  vectors_.insert_or_assign(std::move(word), std::move(vector));
}

const std::vector<double>* EmbeddingTable::find(std::string_view word) const {
  auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

}  // namespace emoint
