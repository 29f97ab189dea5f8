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

#include "pdkit/core/errors.hpp"

namespace pdkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidStep: return "invalid-step";
    case ErrorCode::kInvalidSet: return "invalid-set";
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kUnsupportedStructure: return "unsupported-structure";
    case ErrorCode::kGuardViolation: return "guard-violation";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kSingularSubproblem: return "singular-subproblem";
    case ErrorCode::kNotATree: return "not-a-tree";
    case ErrorCode::kSizeLimit: return "size-limit";
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kStrategy: return "strategy";
    case ErrorCode::kNonSubmodular: return "non-submodular";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace pdkit
