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

// Command-line front end. RunCli is the whole program minus process exit so
// tests can drive it in-process.

#ifndef GRAPHREG_TOOLS_COMMANDS_H_
#define GRAPHREG_TOOLS_COMMANDS_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "graphreg/error.h"
#include "graphreg/trainer.h"

namespace graphreg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitSchema = 3,
  kExitDiverged = 4,
  kExitGradCheckFailed = 5,
  kExitIo = 6,
  kExitDegenerate = 7,
  kExitPrecondition = 8,
};

int ExitCodeFor(ErrorCode code);

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Parsers for structured flag values; all throw InvalidArgumentError.
std::vector<std::size_t> ParseSizeList(const std::string& text);
std::vector<double> ParseDoubleList(const std::string& text);
// "-" or empty means no hidden layers.
std::vector<std::size_t> ParseHiddenDims(const std::string& text);
// "1000:0,+500:1" ends a phase at step 1000 with alpha 0 and another 500
// steps later with alpha 1.
std::vector<AlphaPhase> ParsePhaseSchedule(const std::string& text);

}  // namespace graphreg::cli

#endif  // GRAPHREG_TOOLS_COMMANDS_H_
