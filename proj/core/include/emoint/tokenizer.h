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

// Tweet tokenizer and negation scoping.
//
// Whitespace separates chunks. URLs, @mentions, #hashtags and emoticons stay
// whole; leading and trailing punctuation runs of other chunks become tokens
// of their own ("scared!!" -> "scared", "!!").

#ifndef EMOINT_TOKENIZER_H_
#define EMOINT_TOKENIZER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace emoint {

struct TokenizerOptions {
  bool lowercase = true;
};

struct TokenSequence {
  std::string text;  // original, untouched
  std::vector<std::string> tokens;
};

TokenSequence tokenize(std::string_view text,
                       const TokenizerOptions& options = {});

bool is_url(std::string_view token);
bool is_emoticon(std::string_view token);
// Entirely punctuation and not an emoticon; ends a negation scope.
bool is_punctuation(std::string_view token);
// Tokens eligible for the negation prefix: anything with letters or digits
// except URLs and mentions.
bool is_word(std::string_view token);

inline constexpr std::string_view kNegationPrefix = "NEG-";

// 28 common English negators and their n't contractions, with and without
// the apostrophe.
const std::set<std::string>& default_negators();

// One word per line; blank lines and '#' comments ignored; lowercased.
std::set<std::string> read_negators(const std::string& path);

// From each negator, prefixes the following word tokens with "NEG-" until the
// next punctuation token. The negator itself is not prefixed. Matching is
// case-insensitive.
TokenSequence mark_negation(const TokenSequence& tokens,
                            const std::set<std::string>& negators =
                                default_negators());

// Drops the "NEG-" prefix if present.
std::string_view strip_negation(std::string_view token);

}  // namespace emoint

#endif  // EMOINT_TOKENIZER_H_
