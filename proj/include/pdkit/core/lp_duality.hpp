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

// LP primal/dual pairs and their certificates.
//
//   primal:  minimize c^T x  s.t.  L x >= b, x >= 0
//   dual:    maximize b^T y  s.t.  L^T y <= c, y >= 0
//
// Both are stored in the primal layout (L, b, c). The dual of (L, b, c) is
// (-L^T, -c, -b) with the sense flipped, whose value is -c'^T y, so
// dualization is an exact involution.

#ifndef PDKIT_CORE_LP_DUALITY_HPP_
#define PDKIT_CORE_LP_DUALITY_HPP_

#include <vector>

#include "pdkit/core/linop.hpp"
#include "pdkit/core/violation.hpp"

namespace pdkit {

inline constexpr double kCertificateTol = 1e-9;

enum class LpSense { kMinimize, kMaximize };

struct LpProblem {
  Matrix L;
  Vec b;
  Vec c;
  LpSense sense = LpSense::kMinimize;

  void Validate() const;
  Index rows() const { return L.rows(); }
  Index cols() const { return L.cols(); }
  // Objective in the problem's own sense: c^T z, or -c^T z when maximizing.
  double Value(const Vec& z) const;
};

LpProblem Dualize(const LpProblem& p);

// Indices of L z >= b rows and z >= 0 entries violated beyond 1e-9.
std::vector<Violation> CheckFeasible(const LpProblem& p, const Vec& z);

struct Certificate {
  Vec x;
  Vec y;
  double nu_primal = 1.0;
  double nu_dual = 1.0;
  bool feasible = true;  // false: rejected before checking slackness
  bool passed = false;
  std::vector<Violation> violations;
};

// Relaxed complementary slackness for a minimization problem p:
//   x_j > 0  =>  nu_primal c_j <= (L^T y)_j <= c_j
//   y_i > 0  =>  b_i <= (L x)_i <= nu_dual b_i
// nu_primal = nu_dual = 1 is exact slackness.
Certificate CheckSlackness(const LpProblem& p, const Vec& x, const Vec& y,
                           double nu_primal = 1.0, double nu_dual = 1.0);

struct ApproximationReport {
  bool passed = false;
  double primal_value = 0.0;  // c^T x
  double dual_value = 0.0;    // b^T y
  double nu = 1.0;
  double bound = 0.0;         // nu b^T y
};

// Passes iff c^T x <= nu b^T y + 1e-9.
ApproximationReport ApproximationCertificate(const LpProblem& p, const Vec& x,
                                             const Vec& y, double nu);

}  // namespace pdkit

#endif  // PDKIT_CORE_LP_DUALITY_HPP_
