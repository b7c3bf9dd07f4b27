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

// Small string and file helpers shared by the readers and writers.

#ifndef EMOINT_TEXT_H_
#define EMOINT_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emoint {

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::string_view trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// ASCII lowercase; bytes >= 0x80 are left untouched so UTF-8 stays valid.
std::string to_lower(std::string_view s);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Strict parse of the whole string; no leading/trailing garbage, finite only.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Reads a file into lines with the trailing newline (and any '\r') removed.
// A final empty line produced by a terminating newline is not returned.
std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Splits text into lines the same way read_lines does.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace emoint

#endif  // EMOINT_TEXT_H_
