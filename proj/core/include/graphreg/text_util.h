// Copyright 2026 The graphreg Authors
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

// Helpers for the tab-separated text formats.

#ifndef GRAPHREG_TEXT_UTIL_H_
#define GRAPHREG_TEXT_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphreg {

std::vector<std::string_view> SplitFields(std::string_view line, char sep);

// Strict parsers: the whole field must be consumed.
std::optional<std::uint64_t> ParseUint(std::string_view field);
std::optional<double> ParseDouble(std::string_view field);

// 17 significant digits; parses back to the identical double.
std::string FormatDouble(double x);

// True for blank lines and lines whose first character is '#'.
bool IsCommentOrBlank(std::string_view line);

// Strips a trailing '\r' so CRLF files parse like LF files.
std::string_view TrimLineEnd(std::string_view line);

}  // namespace graphreg

#endif  // GRAPHREG_TEXT_UTIL_H_
