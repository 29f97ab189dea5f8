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

// Primal-dual set cover with the F_max approximation certificate.
// Elements and sets are 0-indexed.

#ifndef PDKIT_CORE_SETCOVER_HPP_
#define PDKIT_CORE_SETCOVER_HPP_

#include <vector>

#include "pdkit/core/linop.hpp"
#include "pdkit/core/lp_duality.hpp"

namespace pdkit {

inline constexpr double kPackedTol = 1e-12;

struct SetCoverInstance {
  Index universe = 0;
  std::vector<std::vector<Index>> sets;
  std::vector<double> costs;

  // Member ranges, duplicate members, cost signs, and full coverage.
  void Validate() const;
  Index num_sets() const { return static_cast<Index>(sets.size()); }
};

// Maximum number of sets containing one element.
Index FMax(const SetCoverInstance& inst);

// Covering LP: L(i, j) = 1 iff element i is in set j, b = 1, c = costs.
LpProblem SetCoverLp(const SetCoverInstance& inst);

struct CoverCheck {
  bool feasible = false;
  std::vector<Index> uncovered;
};

CoverCheck VerifyCover(const SetCoverInstance& inst, const std::vector<int>& x);

struct SetCoverResult {
  std::vector<int> x;          // 0/1 per set
  std::vector<Index> chosen;   // selected set indices, ascending
  Vec y;                       // dual value per element
  double cost = 0.0;
  double dual_value = 0.0;
  Index f_max = 0;
  Certificate certificate;     // nu_primal = 1, nu_dual = F_max
  ApproximationReport approximation;
};

SetCoverResult SolveSetCover(const SetCoverInstance& inst);

}  // namespace pdkit

#endif  // PDKIT_CORE_SETCOVER_HPP_
