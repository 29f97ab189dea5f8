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

#ifndef PDKIT_CORE_VIOLATION_HPP_
#define PDKIT_CORE_VIOLATION_HPP_

#include <string>

#include "pdkit/core/linop.hpp"

namespace pdkit {

// One failed inequality of a certificate or feasibility check.
struct Violation {
  std::string family;  // e.g. "primal-row", "dual-slackness", "vertex-sum"
  Index index = 0;
  double amount = 0.0;  // how far outside the tolerance band
};

}  // namespace pdkit

#endif  // PDKIT_CORE_VIOLATION_HPP_
