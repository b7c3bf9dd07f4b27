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

#include "emoint/submission.h"

#include <cmath>
#include <set>
#include <unordered_map>

#include "emoint/error.h"
#include "emoint/text.h"

namespace emoint {

std::string format_submission(const std::vector<SubmissionRow>& rows) {
  std::string out;
  for (const SubmissionRow& r : rows) {
    if (!std::isfinite(r.score)) {
      throw InvalidArgument("submission row '" + r.id +
                            "' has a non-finite score");
    }
    out += r.id;
    out += '\t';
    out += r.text;
    out += '\t';
    out += emotion_name(r.emotion);
    out += '\t';
    out += format_double(r.score);
    out += '\n';
  }
  return out;
}

void write_submission(const std::vector<SubmissionRow>& rows,
                      const std::string& path) {
  write_file(path, format_submission(rows));
}

std::vector<SubmissionRow> parse_submission_text(std::string_view text,
                                                 const std::string& source) {
  std::vector<SubmissionRow> rows;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 4) {
      throw ParseError(source, i + 1,
                       "expected 4 tab-separated columns, found " +
                           std::to_string(cols.size()));
    }
    const auto emotion = parse_emotion(cols[2]);
    if (!emotion) {
      throw ParseError(source, i + 1,
                       "unknown emotion '" + std::string(cols[2]) + "'");
    }
    const auto score = parse_double(cols[3]);
    if (!score) {
      throw ParseError(source, i + 1,
                       "unparseable score '" + std::string(cols[3]) + "'");
    }
    rows.push_back({std::string(cols[0]), std::string(cols[1]), *emotion,
                    *score});
  }
  return rows;
}

std::vector<SubmissionRow> read_submission(const std::string& path) {
  return parse_submission_text(read_file(path), path);
}

FormatReport check_submission_format_text(std::string_view text,
                                          const Dataset& gold,
                                          const std::string& source) {
  FormatReport report;
  const auto lines = split_lines(text);
  report.rows = lines.size();
  std::unordered_map<std::string, std::size_t> seen;
  auto issue = [&](FormatIssue::Kind kind, std::size_t line, std::string id,
                   const std::string& what) {
    std::string msg = source + ":" + std::to_string(line) + ": " + what;
    report.issues.push_back({kind, line, std::move(id), std::move(msg)});
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 4) {
      issue(FormatIssue::Kind::kColumnCount, lineno, "",
            "expected 4 tab-separated columns, found " +
                std::to_string(cols.size()));
      continue;
    }
    const std::string id(cols[0]);
    if (auto it = seen.find(id); it != seen.end()) {
      issue(FormatIssue::Kind::kDuplicateId, lineno, id,
            "duplicate id '" + id + "' (first seen on line " +
                std::to_string(it->second) + ")");
    } else {
      seen.emplace(id, lineno);
    }
    if (!gold.contains(id)) {
      report.extra_ids.push_back(id);
      issue(FormatIssue::Kind::kExtraId, lineno, id,
            "id '" + id + "' is not in the gold data");
    }
    const auto emotion = parse_emotion(cols[2]);
    if (!emotion) {
      issue(FormatIssue::Kind::kBadEmotion, lineno, id,
            "unknown emotion '" + std::string(cols[2]) + "'");
    } else if (*emotion != gold.emotion()) {
      issue(FormatIssue::Kind::kEmotionMismatch, lineno, id,
            "emotion '" + std::string(cols[2]) + "' does not match gold '" +
                std::string(emotion_name(gold.emotion())) + "'");
    }
    if (!parse_double(cols[3])) {
      issue(FormatIssue::Kind::kBadScore, lineno, id,
            "unparseable score '" + std::string(cols[3]) + "'");
    }
  }
  for (const Tweet& t : gold.tweets()) {
    if (seen.count(t.id) == 0) {
      report.missing_ids.push_back(t.id);
      report.issues.push_back({FormatIssue::Kind::kMissingId, 0, t.id,
                               source + ": missing id '" + t.id + "'"});
    }
  }
  return report;
}

FormatReport check_submission_format(const std::string& path,
                                     const Dataset& gold) {
  return check_submission_format_text(read_file(path), gold, path);
}

std::string FormatReport::to_string() const {
  if (passed()) return "format OK (" + std::to_string(rows) + " rows)\n";
  std::string out = "format check FAILED: " + std::to_string(issues.size()) +
                    " issue(s)\n";
  for (const FormatIssue& i : issues) out += "  " + i.message + "\n";
  return out;
}

}  // namespace emoint
