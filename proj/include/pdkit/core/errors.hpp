// Copyright 2026 The pdkit Authors
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

#ifndef PDKIT_CORE_ERRORS_HPP_
#define PDKIT_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdkit {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidStep,
  kInvalidSet,
  kInvalidParameter,
  kUnsupportedStructure,
  kGuardViolation,
  kDivergence,
  kSingularSubproblem,
  kNotATree,
  kSizeLimit,
  kInvalidInstance,
  kStrategy,
  kNonSubmodular,
  kParse,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (notably the C API) map failures onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace pdkit

#endif  // PDKIT_CORE_ERRORS_HPP_
