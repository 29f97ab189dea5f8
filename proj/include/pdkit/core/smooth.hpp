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

// Differentiable convex functions with Lipschitz gradients (the h term).

#ifndef PDKIT_CORE_SMOOTH_HPP_
#define PDKIT_CORE_SMOOTH_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "pdkit/core/linop.hpp"

namespace pdkit {

// h(x) = 1/2 x^T H x + <g, x> + c.
struct QuadraticForm {
  Matrix H;
  Vec g;
  double c = 0.0;
};

// h(x) = (weight/2) ||x - center||^2.
struct IsotropicSmooth {
  double weight = 0.0;
  Vec center;
};

// h(x) = (weight/2) ||A x - b||^2.
struct LeastSquaresSmooth {
  LinOp A;
  Vec b;
  double weight = 1.0;
};

class SmoothFn {
 public:
  using EvalFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  // h = 0, beta = 0.
  SmoothFn();

  static SmoothFn Zero();
  static SmoothFn SquaredDistance(double weight, Vec center);
  static SmoothFn LeastSquares(LinOp A, Vec b, double weight = 1.0);
  // beta must be a valid Lipschitz constant of grad; it is not checked.
  static SmoothFn Custom(Index dim, EvalFn eval, GradFn grad, double beta,
                         std::string name);

  double Eval(const Vec& x) const;
  Vec Grad(const Vec& x) const;
  double beta() const;
  // Fixed dimension, or nullopt for Zero.
  std::optional<Index> dim() const;
  bool is_zero() const;
  std::string Describe() const;

  // Dense quadratic form in dimension n; nullopt for custom functions.
  std::optional<QuadraticForm> Quadratic(Index n) const;
  std::optional<IsotropicSmooth> isotropic() const;
  std::optional<LeastSquaresSmooth> least_squares() const;

 private:
  struct Rep;
  explicit SmoothFn(std::shared_ptr<const Rep> rep);
  std::shared_ptr<const Rep> rep_;
};

}  // namespace pdkit

#endif  // PDKIT_CORE_SMOOTH_HPP_
