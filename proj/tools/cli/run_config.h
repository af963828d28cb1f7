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

// Key/value run configuration shared by config files and command-line flags.
//
// A config file holds one "key=value" per line ('#' comments allowed). Every
// key is also a flag: key max_steps is --max-steps. Values are resolved as
// defaults < config file < flags, and the canonical text of the resolved
// values is what gets hashed and echoed into manifests.

#ifndef GRAPHREG_TOOLS_RUN_CONFIG_H_
#define GRAPHREG_TOOLS_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace graphreg::cli {

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
};

class RunConfig {
 public:
  explicit RunConfig(const std::vector<ConfigKey>& keys);

  // Throws InvalidArgumentError on unknown keys or malformed lines and
  // IoError when the file cannot be read.
  void LoadFile(const std::string& path);
  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const { return values_.contains(key); }

  const std::string& Get(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  std::size_t GetSize(const std::string& key) const;
  std::uint64_t GetUint64(const std::string& key) const;
  bool GetBool(const std::string& key) const;

  // "key=value\n" for every key, sorted by key.
  std::string Canonical() const;
  // FNV-1a 64 of Canonical(), as 16 lowercase hex digits.
  std::string Hash() const;

 private:
  std::map<std::string, std::string> values_;
};

std::string FlagName(const std::string& key);

}  // namespace graphreg::cli

#endif  // GRAPHREG_TOOLS_RUN_CONFIG_H_
