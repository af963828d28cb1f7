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

#ifndef GRAPHREG_ERROR_H_
#define GRAPHREG_ERROR_H_

#include <stdexcept>
#include <string>

namespace graphreg {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateInput,
  kPrecondition,
  kParse,
  kSchema,
  kDiverged,
  kIo,
};

// Base of every exception thrown by the library. The code lets the CLI map
// failures onto stable exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define GRAPHREG_DEFINE_ERROR(Name, Code)                                     \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  }

GRAPHREG_DEFINE_ERROR(InvalidArgumentError, kInvalidArgument);
GRAPHREG_DEFINE_ERROR(DegenerateInputError, kDegenerateInput);
// A caller broke a documented contract (e.g. ground truth missing from the
// sampled label subset).
GRAPHREG_DEFINE_ERROR(PreconditionError, kPrecondition);
GRAPHREG_DEFINE_ERROR(ParseError, kParse);
GRAPHREG_DEFINE_ERROR(SchemaError, kSchema);
GRAPHREG_DEFINE_ERROR(DivergenceError, kDiverged);
GRAPHREG_DEFINE_ERROR(IoError, kIo);

#undef GRAPHREG_DEFINE_ERROR

}  // namespace graphreg

#endif  // GRAPHREG_ERROR_H_
