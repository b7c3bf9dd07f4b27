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

#include "emoint/tokenizer.h"

#include <array>
#include <regex>

#include "emoint/text.h"

namespace emoint {

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) ||
         (c >= 91 && c <= 96) || (c >= 123 && c <= 126);
}

// Multi-byte punctuation common in tweets: ellipsis and curly quotes.
constexpr std::array<std::string_view, 5> kUnicodePunct = {
    "\xE2\x80\xA6", "\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98",
    "\xE2\x80\x99"};

std::size_t punct_prefix_len(std::string_view s) {
  if (s.empty()) return 0;
  if (is_ascii_punct(static_cast<unsigned char>(s[0]))) return 1;
  for (std::string_view p : kUnicodePunct) {
    if (s.substr(0, p.size()) == p) return p.size();
  }
  return 0;
}

std::size_t punct_suffix_len(std::string_view s) {
  if (s.empty()) return 0;
  if (is_ascii_punct(static_cast<unsigned char>(s.back()))) return 1;
  for (std::string_view p : kUnicodePunct) {
    if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) {
      return p.size();
    }
  }
  return 0;
}

bool all_punct(std::string_view s) {
  if (s.empty()) return false;
  while (!s.empty()) {
    const std::size_t n = punct_prefix_len(s);
    if (n == 0) return false;
    s.remove_prefix(n);
  }
  return true;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && to_lower(s.substr(0, prefix.size())) == prefix;
}

bool is_mention(std::string_view token) {
  return token.size() > 1 && token[0] == '@' && !all_punct(token.substr(1));
}

}  // namespace

bool is_url(std::string_view token) {
  return starts_with_ci(token, "http://") || starts_with_ci(token, "https://") ||
         starts_with_ci(token, "www.");
}

bool is_emoticon(std::string_view token) {
  static const std::regex kEmoticon(
      R"(^(?:)"
      R"([<>]?[:;=][-o'^]?[()\[\]dDpP/\\|*3oO0@$}{]+)"  // :) ;-( =D :'(
      R"(|[xX8][-']?[()dDpP]+)"                          // xD 8)
      R"(|[()\[\]dDpP/\\|]+[-']?[:;=])"                  // (: )-:
      R"(|<\/?3+)"                                       // <3 </3
      R"(|[\^>TtoO0-][_.]+[\^<TtoO0-])"                  // ^_^ -_- T_T
      R"(|\^\^)"
      R"()$)");
  if (token.empty() || token.size() > 12) return false;
  return std::regex_match(token.begin(), token.end(), kEmoticon);
}

bool is_punctuation(std::string_view token) {
  return all_punct(token) && !is_emoticon(token);
}

bool is_word(std::string_view token) {
  if (is_url(token) || is_mention(token) || is_emoticon(token)) return false;
  for (unsigned char c : token) {
    if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
        (c >= 'A' && c <= 'Z') || c >= 0x80) {
      return !all_punct(token);
    }
  }
  return false;
}

TokenSequence tokenize(std::string_view text, const TokenizerOptions& options) {
  TokenSequence out;
  out.text = std::string(text);
  auto emit = [&](std::string_view tok) {
    if (tok.empty()) return;
    out.tokens.push_back(options.lowercase ? to_lower(tok) : std::string(tok));
  };
  for (std::string_view chunk : split_whitespace(text)) {
    if (is_url(chunk) || is_emoticon(chunk) || all_punct(chunk)) {
      emit(chunk);
      continue;
    }
    std::size_t lead = 0;
    while (lead < chunk.size() && chunk[lead] != '#' && chunk[lead] != '@') {
      const std::size_t n = punct_prefix_len(chunk.substr(lead));
      if (n == 0) break;
      lead += n;
    }
    std::size_t trail = 0;
    while (trail < chunk.size() - lead) {
      const std::size_t n =
          punct_suffix_len(chunk.substr(lead, chunk.size() - lead - trail));
      if (n == 0) break;
      trail += n;
    }
    emit(chunk.substr(0, lead));
    emit(chunk.substr(lead, chunk.size() - lead - trail));
    emit(chunk.substr(chunk.size() - trail));
  }
  return out;
}

const std::set<std::string>& default_negators() {
  static const std::set<std::string> kNegators = {
      "no",       "not",      "never",   "none",      "nobody",
      "nothing",  "neither",  "nor",     "nowhere",   "cannot",
      "can't",    "cant",     "don't",   "dont",      "doesn't",
      "doesnt",   "didn't",   "didnt",   "isn't",     "isnt",
      "aren't",   "wasn't",   "weren't", "won't",     "wont",
      "wouldn't", "shouldn't", "couldn't"};
  return kNegators;
}

std::set<std::string> read_negators(const std::string& path) {
  std::set<std::string> out;
  for (const std::string& line : read_lines(path)) {
    const std::string_view word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    out.insert(to_lower(word));
  }
  return out;
}

TokenSequence mark_negation(const TokenSequence& tokens,
                            const std::set<std::string>& negators) {
  TokenSequence out;
  out.text = tokens.text;
  out.tokens.reserve(tokens.tokens.size());
  bool in_scope = false;
  for (const std::string& tok : tokens.tokens) {
    if (negators.count(to_lower(tok)) > 0) {
      out.tokens.push_back(tok);
      in_scope = true;
    } else if (is_punctuation(tok)) {
      out.tokens.push_back(tok);
      in_scope = false;
    } else if (in_scope && is_word(tok)) {
      out.tokens.push_back(std::string(kNegationPrefix) + tok);
    } else {
      out.tokens.push_back(tok);
    }
  }
  return out;
}

std::string_view strip_negation(std::string_view token) {
  if (token.substr(0, kNegationPrefix.size()) == kNegationPrefix) {
    token.remove_prefix(kNegationPrefix.size());
  }
  return token;
}

}  // namespace emoint
