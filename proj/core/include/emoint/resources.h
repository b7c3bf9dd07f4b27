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

// Affect lexicons and pre-trained word embeddings.

#ifndef EMOINT_RESOURCES_H_
#define EMOINT_RESOURCES_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace emoint {

enum class LexiconMode { kNominal, kNumeric };

// Word lists keyed by lowercase word. Nominal lexicons record class
// membership; numeric lexicons record one real per (word, class).
//
// File format: first line `#mode=nominal` or `#mode=numeric`, then
// `word<TAB>class<TAB>value` lines. Nominal values must be "1". Classes are
// ordered by first appearance.
class Lexicon {
 public:
  struct Entry {
    int class_index;
    double value;
  };

  Lexicon(std::string name, LexiconMode mode) : name_(std::move(name)), mode_(mode) {}

  static Lexicon load(const std::string& path, std::string name = "");
  static Lexicon parse(std::string_view text, std::string name,
                       const std::string& source = "<lexicon>");

  // Adds or overwrites a (word, class) entry.
  void add(std::string_view word, std::string_view cls, double value = 1.0);

  const std::string& name() const { return name_; }
  LexiconMode mode() const { return mode_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t size() const { return entries_.size(); }

  // Entries for a lowercase word; empty when absent.
  const std::vector<Entry>& lookup(std::string_view word) const;

 private:
  std::string name_;
  LexiconMode mode_;
  std::vector<std::string> classes_;
  std::unordered_map<std::string, std::vector<Entry>> entries_;
};

// Text format: `word v1 ... vd` per line, with an optional leading
// `count dim` header line.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  static EmbeddingTable load(const std::string& path);
  static EmbeddingTable parse(std::string_view text,
                              const std::string& source = "<embeddings>");

  // Throws InvalidArgument if the vector length differs from dimension().
  void add(std::string word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  // nullptr for out-of-vocabulary words.
  const std::vector<double>* find(std::string_view word) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

}  // namespace emoint

#endif  // EMOINT_RESOURCES_H_
