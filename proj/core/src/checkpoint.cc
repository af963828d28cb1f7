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

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "graphreg/error.h"
#include "graphreg/model.h"

namespace graphreg {

namespace {

constexpr char kMagic[] = "graphreg-checkpoint";
constexpr int kFormatVersion = 1;

std::string JoinDims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

std::vector<std::size_t> ParseDims(const std::string& text) {
  std::vector<std::size_t> dims;
  if (text == "-") return dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("checkpoint: bad hidden_dims entry '" + item + "'");
    }
  }
  return dims;
}

std::string ReadHeaderValue(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("checkpoint: truncated header, expected " + key);
  }
  const std::string prefix = key + " ";
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError("checkpoint: expected '" + key + "', got '" + line + "'");
  }
  return line.substr(prefix.size());
}

std::size_t ReadHeaderSize(std::istream& in, const std::string& key) {
  const std::string value = ReadHeaderValue(in, key);
  try {
    std::size_t used = 0;
    const std::size_t n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw ParseError("checkpoint: bad value for " + key + ": '" + value + "'");
  }
}

void PutLittleEndian(double x, std::ostream& out) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

double GetLittleEndian(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw ParseError("checkpoint: truncated parameter data");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void WriteCheckpoint(const ModelParams& params, std::ostream& out) {
  const ModelConfig& c = params.config;
  out << kMagic << ' ' << kFormatVersion << '\n'
      << "input_dim " << c.input_dim << '\n'
      << "hidden_dims " << JoinDims(c.hidden_dims) << '\n'
      << "embedding_dim " << c.embedding_dim << '\n'
      << "num_classes " << c.num_classes << '\n'
      << "parameter_count " << params.ParameterCount() << '\n'
      << "end_header\n";
  for (auto block : params.Blocks()) {
    for (double x : block) PutLittleEndian(x, out);
  }
}

ModelParams ReadCheckpoint(std::istream& in) {
  const std::string version = ReadHeaderValue(in, kMagic);
  if (version != std::to_string(kFormatVersion)) {
    throw ParseError("checkpoint: unsupported format version " + version);
  }
  ModelConfig config;
  config.input_dim = ReadHeaderSize(in, "input_dim");
  config.hidden_dims = ParseDims(ReadHeaderValue(in, "hidden_dims"));
  config.embedding_dim = ReadHeaderSize(in, "embedding_dim");
  config.num_classes = ReadHeaderSize(in, "num_classes");
  const std::size_t count = ReadHeaderSize(in, "parameter_count");
  std::string line;
  if (!std::getline(in, line) || line != "end_header") {
    throw ParseError("checkpoint: missing end_header");
  }
  try {
    config.Validate();
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(std::string("checkpoint: ") + e.what());
  }
  ModelParams params = ModelParams::Zeros(config);
  if (params.ParameterCount() != count) {
    throw SchemaError("checkpoint: parameter_count " + std::to_string(count) +
                      " does not match the configured shapes");
  }
  for (auto block : params.Blocks()) {
    for (double& x : block) x = GetLittleEndian(in);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError("checkpoint: trailing bytes after parameter data");
  }
  return params;
}

void SaveCheckpoint(const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteCheckpoint(params, out);
  if (!out.flush()) throw IoError("write failed: " + path);
}

ModelParams LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return ReadCheckpoint(in);
}

}  // namespace graphreg
