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

// Proximity operators and Fenchel conjugation.
//
// ProxFn is an immutable handle on a proper convex lower-semicontinuous
// function. It evaluates to an ExtReal, exposes prox_{gamma f}, and knows its
// conjugate whenever that conjugate has a closed form in this catalog. The
// calculus functions (Translate, LinearTilt, ScaleFn, ScaleArg, Reflect,
// Separable) build new functions whose prox is induced from the argument's
// prox and whose conjugate follows the matching conjugation rule.

#ifndef PDKIT_CORE_PROX_HPP_
#define PDKIT_CORE_PROX_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdkit/core/ext_real.hpp"
#include "pdkit/core/linop.hpp"

namespace pdkit {

// A parameter that is either one scalar broadcast over all coordinates or a
// vector of fixed length.
class Param {
 public:
  Param(double scalar = 0.0) : scalar_(scalar) {}  // NOLINT: implicit by design
  Param(Vec values) : values_(std::move(values)), is_vector_(true) {}  // NOLINT

  bool is_vector() const { return is_vector_; }
  double scalar() const { return scalar_; }
  const Vec& vector() const { return values_; }
  std::optional<Index> dim() const {
    if (is_vector_) return values_.size();
    return std::nullopt;
  }
  double at(Index i) const { return is_vector_ ? values_[i] : scalar_; }
  Vec Resolve(Index n) const;
  std::string ToString() const;

 private:
  double scalar_ = 0.0;
  Vec values_;
  bool is_vector_ = false;
};

// f(x) = sum_i (weight/2) (x_i - center_i)^2 + offset_i.
struct IsotropicQuadratic {
  double weight = 0.0;
  Param center;
  Param offset;
};

class ProxFnImpl;

class ProxFn {
 public:
  explicit ProxFn(std::shared_ptr<const ProxFnImpl> impl);

  ExtReal Eval(const Vec& x) const;
  // prox_{gamma f}(x). gamma <= 0 is an invalid-step error.
  Vec Prox(const Vec& x, double gamma) const;

  // Closed-form conjugate, when this catalog knows it.
  std::optional<ProxFn> Conjugate() const;
  // Describe() of the conjugate, or empty when unknown.
  std::string conjugate_tag() const;
  std::string Describe() const;

  // Fixed dimension, or nullopt when the function applies to any dimension.
  std::optional<Index> dim() const;
  bool is_zero() const;
  // Set when f is an isotropic quadratic (ZERO included).
  std::optional<IsotropicQuadratic> isotropic_quadratic() const;

 private:
  std::shared_ptr<const ProxFnImpl> impl_;
};

// ---- standalone prox maps ------------------------------------------------

// Componentwise sign(x) max(|x| - gamma, 0).
Vec ProxL1(const Vec& x, double gamma);
// prox of gamma |.|^p, componentwise, p >= 1.
Vec ProxPower(const Vec& x, double gamma, double p);
double ProxPowerScalar(double x, double gamma, double p);
// Componentwise clamp onto [lo, hi].
Vec ProjectBox(const Vec& x, const Param& lo, const Param& hi);
// x - prox_{gamma f}(x) = gamma prox_{f*/gamma}(x / gamma).
Vec ProxConjugate(const ProxFn& f, const Vec& x, double gamma);

// ---- catalog ---------------------------------------------------------------

ProxFn Zero();
// iota_{0}
ProxFn ZeroIndicator();
// lambda ||x||_1
ProxFn L1Norm(double lambda = 1.0);
// (weight/2) ||x - center||^2
ProxFn SquaredDistance(double weight, Param center = Param(0.0));
ProxFn Quadratic(double weight, Param center, Param offset);
// Indicator of the box [lo, hi]; bounds may be infinite.
ProxFn BoxIndicator(Param lo, Param hi);
ProxFn NonNegIndicator();
// lambda sum_i |x_i|^p. p < 1 is rejected as nonconvex.
ProxFn PowerFn(double p, double lambda = 1.0);
// sigma_C(u) = sup_{x in C} <u, x> for the box C = [lo, hi].
ProxFn SupportFunctionBox(Param lo, Param hi);
// Indicator of {(x_1, ..., x_M) : x_1 = ... = x_M}, each block of size n.
ProxFn ConsensusIndicator(Index blocks, Index block_size);
// Indicator of {(v_1, ..., v_M) : v_1 + ... + v_M = 0}.
ProxFn SumZeroIndicator(Index blocks, Index block_size);

// Product function over consecutive blocks of the given sizes.
ProxFn BlockSeparable(std::vector<ProxFn> parts, std::vector<Index> sizes);

// ---- conjugation calculus --------------------------------------------------

// f(x - c)
ProxFn Translate(const ProxFn& f, Param c);
// f(x) + <x, c>
ProxFn LinearTilt(const ProxFn& f, Param c);
// alpha f(x), alpha > 0
ProxFn ScaleFn(const ProxFn& f, double alpha);
// f(x / alpha), alpha != 0
ProxFn ScaleArg(const ProxFn& f, double alpha);
// f(-x)
ProxFn Reflect(const ProxFn& f);
// sum_j phi_j(x_j) for scalar functions phi_j.
ProxFn Separable(std::vector<ProxFn> scalar_parts);

// The conjugate of f + g is the inf-convolution of the conjugates, which has
// no finite algorithm here; this only names it.
std::string SumConjugateTag(const ProxFn& f, const ProxFn& g);

// (sigma_C, iota_C) for a nonempty box C.
std::pair<ProxFn, ProxFn> SupportIndicatorPair(Param lo, Param hi);

// ---- grid conjugate (test oracle only) ------------------------------------

struct Grid1D {
  double lo = -10.0;
  double hi = 10.0;
  double step = 1e-3;
};

struct ConjugateEstimate {
  double value = 0.0;
  // The supremum was attained on the grid boundary, so it is probably
  // unbounded (or the grid does not bracket it).
  bool unbounded = false;
};

ConjugateEstimate ConjugateValue1D(const ProxFn& f, double u,
                                   const Grid1D& grid = {});

}  // namespace pdkit

#endif  // PDKIT_CORE_PROX_HPP_
