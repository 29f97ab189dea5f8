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

#include "pdkit/core/setcover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdkit/core/errors.hpp"

namespace pdkit {

namespace {

std::vector<std::vector<Index>> Memberships(const SetCoverInstance& inst) {
  std::vector<std::vector<Index>> in(static_cast<std::size_t>(inst.universe));
  for (Index j = 0; j < inst.num_sets(); ++j) {
    for (Index i : inst.sets[j]) in[i].push_back(j);
  }
  return in;
}

}  // namespace

void SetCoverInstance::Validate() const {
  Require(universe >= 1, ErrorCode::kInvalidInstance, "universe must be nonempty");
  Require(sets.size() == costs.size(), ErrorCode::kInvalidInstance,
          "one cost per set is required");
  std::vector<bool> covered(static_cast<std::size_t>(universe), false);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    Require(std::isfinite(costs[j]) && costs[j] >= 0.0, ErrorCode::kInvalidInstance,
            "set " + std::to_string(j) + " has a negative or non-finite cost");
    std::vector<Index> sorted = sets[j];
    std::sort(sorted.begin(), sorted.end());
    Require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            ErrorCode::kInvalidInstance,
            "set " + std::to_string(j) + " lists an element twice");
    for (Index i : sets[j]) {
      Require(i >= 0 && i < universe, ErrorCode::kInvalidInstance,
              "set " + std::to_string(j) + " has element " + std::to_string(i) +
                  " outside the universe");
      covered[i] = true;
    }
  }
  for (Index i = 0; i < universe; ++i) {
    Require(covered[i], ErrorCode::kInvalidInstance,
            "element " + std::to_string(i) + " is not covered by any set");
  }
}

Index FMax(const SetCoverInstance& inst) {
  inst.Validate();
  Index best = 0;
  for (const auto& sets : Memberships(inst)) {
    best = std::max(best, static_cast<Index>(sets.size()));
  }
  return best;
}

LpProblem SetCoverLp(const SetCoverInstance& inst) {
  inst.Validate();
  LpProblem lp;
  lp.L = Matrix::Zero(inst.universe, inst.num_sets());
  for (Index j = 0; j < inst.num_sets(); ++j) {
    for (Index i : inst.sets[j]) lp.L(i, j) = 1.0;
  }
  lp.b = Vec::Ones(inst.universe);
  lp.c = Vec(inst.num_sets());
  for (Index j = 0; j < inst.num_sets(); ++j) lp.c[j] = inst.costs[j];
  return lp;
}

CoverCheck VerifyCover(const SetCoverInstance& inst, const std::vector<int>& x) {
  Require(static_cast<Index>(x.size()) == inst.num_sets(),
          ErrorCode::kInvalidArgument, "cover vector has the wrong length");
  std::vector<bool> covered(static_cast<std::size_t>(inst.universe), false);
  for (Index j = 0; j < inst.num_sets(); ++j) {
    Require(x[j] == 0 || x[j] == 1, ErrorCode::kInvalidArgument,
            "cover vector must be binary");
    if (x[j]) {
      for (Index i : inst.sets[j]) covered[i] = true;
    }
  }
  CoverCheck check;
  for (Index i = 0; i < inst.universe; ++i) {
    if (!covered[i]) check.uncovered.push_back(i);
  }
  check.feasible = check.uncovered.empty();
  return check;
}

SetCoverResult SolveSetCover(const SetCoverInstance& inst) {
  inst.Validate();
  const Index K = inst.universe;
  const Index N = inst.num_sets();
  const auto member_of = Memberships(inst);

  SetCoverResult r;
  r.x.assign(static_cast<std::size_t>(N), 0);
  r.y = Vec::Zero(K);
  std::vector<double> residual(inst.costs);
  std::vector<bool> covered(static_cast<std::size_t>(K), false);
  auto select = [&](Index j) {
    r.x[j] = 1;
    for (Index i : inst.sets[j]) covered[i] = true;
  };

  // Zero-cost sets are packed at y = 0.
  for (Index j = 0; j < N; ++j) {
    if (inst.costs[j] == 0.0) select(j);
  }

  for (Index i = 0; i < K; ++i) {
    if (covered[i]) continue;
    double raise = std::numeric_limits<double>::infinity();
    for (Index j : member_of[i]) raise = std::min(raise, residual[j]);
    r.y[i] += raise;
    for (Index j : member_of[i]) residual[j] -= raise;
    // Every set packed by this raise joins the cover, in index order.
    for (Index j : member_of[i]) {
      if (!r.x[j] && residual[j] <= kPackedTol) select(j);
    }
  }

  for (Index j = 0; j < N; ++j) {
    if (r.x[j]) {
      r.chosen.push_back(j);
      r.cost += inst.costs[j];
    }
  }
  r.dual_value = r.y.sum();
  r.f_max = FMax(inst);

  const LpProblem lp = SetCoverLp(inst);
  Vec x(N);
  for (Index j = 0; j < N; ++j) x[j] = r.x[j];
  r.certificate = CheckSlackness(lp, x, r.y, 1.0, static_cast<double>(r.f_max));
  r.approximation = ApproximationCertificate(lp, x, r.y, static_cast<double>(r.f_max));
  return r;
}

}  // namespace pdkit
