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

#ifndef EMOINT_SUBMISSION_H_
#define EMOINT_SUBMISSION_H_

#include <string>
#include <string_view>
#include <vector>

#include "emoint/dataset.h"

namespace emoint {

struct SubmissionRow {
  std::string id;
  std::string text;
  Emotion emotion = Emotion::kAnger;
  double score = 0.0;
};

std::string format_submission(const std::vector<SubmissionRow>& rows);

// Throws InvalidArgument for a non-finite score, IoError on write failure.
void write_submission(const std::vector<SubmissionRow>& rows,
                      const std::string& path);

// Strict reader: throws ParseError on the first malformed line.
std::vector<SubmissionRow> parse_submission_text(
    std::string_view text, const std::string& source = "<submission>");
std::vector<SubmissionRow> read_submission(const std::string& path);

struct FormatIssue {
  enum class Kind {
    kColumnCount,
    kBadScore,
    kBadEmotion,
    kEmotionMismatch,
    kDuplicateId,
    kExtraId,
    kMissingId,
  };
  Kind kind;
  std::size_t line = 0;  // 0 for missing ids
  std::string id;
  std::string message;
};

struct FormatReport {
  std::size_t rows = 0;
  std::vector<FormatIssue> issues;
  std::vector<std::string> missing_ids;
  std::vector<std::string> extra_ids;

  bool passed() const { return issues.empty(); }
  std::string to_string() const;
};

// Collects every problem instead of stopping at the first. A submission passes
// iff every line is well formed and it covers exactly the gold ids.
FormatReport check_submission_format_text(std::string_view text,
                                          const Dataset& gold,
                                          const std::string& source);
FormatReport check_submission_format(const std::string& path,
                                     const Dataset& gold);

}  // namespace emoint

#endif  // EMOINT_SUBMISSION_H_
