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

#include "run_config.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "graphreg/error.h"
#include "graphreg/text_util.h"

namespace graphreg::cli {

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const char* expected) {
  throw InvalidArgumentError("config key " + key + ": expected " + expected +
                             ", got '" + value + "'");
}

}  // namespace

std::string FlagName(const std::string& key) {
  std::string flag = key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return "--" + flag;
}

RunConfig::RunConfig(const std::vector<ConfigKey>& keys) {
  for (const ConfigKey& k : keys) values_[k.name] = k.default_value;
}

void RunConfig::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw);
    if (IsCommentOrBlank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgumentError(path + ":" + std::to_string(line_no) +
                                 ": expected key=value");
    }
    Set(Trim(std::string_view(line).substr(0, eq)),
        Trim(std::string_view(line).substr(eq + 1)));
  }
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw InvalidArgumentError("unknown config key '" + key + "'");
  }
  it->second = value;
}

const std::string& RunConfig::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw InvalidArgumentError("unknown config key '" + key + "'");
  }
  return it->second;
}

double RunConfig::GetDouble(const std::string& key) const {
  const std::string& value = Get(key);
  auto x = ParseDouble(value);
  if (!x) BadValue(key, value, "a finite number");
  return *x;
}

std::size_t RunConfig::GetSize(const std::string& key) const {
  return static_cast<std::size_t>(GetUint64(key));
}

std::uint64_t RunConfig::GetUint64(const std::string& key) const {
  const std::string& value = Get(key);
  auto x = ParseUint(value);
  if (!x) BadValue(key, value, "a nonnegative integer");
  return *x;
}

bool RunConfig::GetBool(const std::string& key) const {
  const std::string& value = Get(key);
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  BadValue(key, value, "true or false");
}

std::string RunConfig::Canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

std::string RunConfig::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : Canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace graphreg::cli
