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

#include "pdkit/core/smooth.hpp"

#include <cmath>
#include <utility>

#include "pdkit/core/errors.hpp"

namespace pdkit {

struct SmoothFn::Rep {
  enum class Kind { kZero, kSquaredDistance, kLeastSquares, kCustom };
  Kind kind = Kind::kZero;
  double weight = 0.0;
  Vec center;
  LinOp A;
  Vec b;
  EvalFn eval;
  GradFn grad;
  double beta = 0.0;
  Index dim = 0;
  std::string name;
};

SmoothFn::SmoothFn() : rep_(std::make_shared<Rep>()) {}
SmoothFn::SmoothFn(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

SmoothFn SmoothFn::Zero() { return SmoothFn(); }

SmoothFn SmoothFn::SquaredDistance(double weight, Vec center) {
  Require(std::isfinite(weight) && weight >= 0.0, ErrorCode::kInvalidParameter,
          "squared-distance weight must be finite and nonnegative");
  RequireFinite(center, "squared-distance center");
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kSquaredDistance;
  rep->weight = weight;
  rep->center = std::move(center);
  rep->beta = weight;
  rep->dim = rep->center.size();
  return SmoothFn(std::move(rep));
}

SmoothFn SmoothFn::LeastSquares(LinOp A, Vec b, double weight) {
  Require(std::isfinite(weight) && weight >= 0.0, ErrorCode::kInvalidParameter,
          "least-squares weight must be finite and nonnegative");
  Require(A.rows() == b.size(), ErrorCode::kInvalidArgument,
          "least-squares: A and b disagree in dimension");
  RequireFinite(b, "least-squares data");
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kLeastSquares;
  rep->weight = weight;
  rep->beta = weight * A.norm_bound() * A.norm_bound();
  rep->dim = A.cols();
  rep->A = std::move(A);
  rep->b = std::move(b);
  return SmoothFn(std::move(rep));
}

SmoothFn SmoothFn::Custom(Index dim, EvalFn eval, GradFn grad, double beta,
                          std::string name) {
  Require(std::isfinite(beta) && beta >= 0.0, ErrorCode::kInvalidParameter,
          "Lipschitz constant must be finite and nonnegative");
  Require(static_cast<bool>(eval) && static_cast<bool>(grad),
          ErrorCode::kInvalidArgument, "custom smooth function needs eval and grad");
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kCustom;
  rep->eval = std::move(eval);
  rep->grad = std::move(grad);
  rep->beta = beta;
  rep->dim = dim;
  rep->name = std::move(name);
  return SmoothFn(std::move(rep));
}

double SmoothFn::Eval(const Vec& x) const {
  if (auto d = dim()) {
    Require(x.size() == *d, ErrorCode::kInvalidArgument, "smooth term: dimension mismatch");
  }
  switch (rep_->kind) {
    case Rep::Kind::kZero: return 0.0;
    case Rep::Kind::kSquaredDistance:
      return 0.5 * rep_->weight * (x - rep_->center).squaredNorm();
    case Rep::Kind::kLeastSquares:
      return 0.5 * rep_->weight * (rep_->A.Apply(x) - rep_->b).squaredNorm();
    case Rep::Kind::kCustom: return rep_->eval(x);
  }
  return 0.0;
}

Vec SmoothFn::Grad(const Vec& x) const {
  if (auto d = dim()) {
    Require(x.size() == *d, ErrorCode::kInvalidArgument, "smooth term: dimension mismatch");
  }
  switch (rep_->kind) {
    case Rep::Kind::kZero: return Vec::Zero(x.size());
    case Rep::Kind::kSquaredDistance: return rep_->weight * (x - rep_->center);
    case Rep::Kind::kLeastSquares:
      return rep_->weight * rep_->A.Adjoint(rep_->A.Apply(x) - rep_->b);
    case Rep::Kind::kCustom: return rep_->grad(x);
  }
  return Vec::Zero(x.size());
}

double SmoothFn::beta() const { return rep_->beta; }

std::optional<Index> SmoothFn::dim() const {
  if (rep_->kind == Rep::Kind::kZero) return std::nullopt;
  return rep_->dim;
}

bool SmoothFn::is_zero() const { return rep_->kind == Rep::Kind::kZero; }

std::string SmoothFn::Describe() const {
  switch (rep_->kind) {
    case Rep::Kind::kZero: return "ZERO";
    case Rep::Kind::kSquaredDistance: return "SQ";
    case Rep::Kind::kLeastSquares: return "LSQ";
    case Rep::Kind::kCustom: return rep_->name;
  }
  return "?";
}

std::optional<QuadraticForm> SmoothFn::Quadratic(Index n) const {
  if (auto d = dim()) {
    Require(*d == n, ErrorCode::kInvalidArgument, "smooth term: dimension mismatch");
  }
  QuadraticForm q;
  switch (rep_->kind) {
    case Rep::Kind::kZero:
      q.H = Matrix::Zero(n, n);
      q.g = Vec::Zero(n);
      return q;
    case Rep::Kind::kSquaredDistance:
      q.H = rep_->weight * Matrix::Identity(n, n);
      q.g = -rep_->weight * rep_->center;
      q.c = 0.5 * rep_->weight * rep_->center.squaredNorm();
      return q;
    case Rep::Kind::kLeastSquares: {
      const Matrix A = rep_->A.ToDense();
      q.H = rep_->weight * A.transpose() * A;
      q.g = -rep_->weight * A.transpose() * rep_->b;
      q.c = 0.5 * rep_->weight * rep_->b.squaredNorm();
      return q;
    }
    case Rep::Kind::kCustom: break;
  }
  return std::nullopt;
}

std::optional<IsotropicSmooth> SmoothFn::isotropic() const {
  if (rep_->kind != Rep::Kind::kSquaredDistance) return std::nullopt;
  return IsotropicSmooth{rep_->weight, rep_->center};
}

std::optional<LeastSquaresSmooth> SmoothFn::least_squares() const {
  if (rep_->kind != Rep::Kind::kLeastSquares) return std::nullopt;
  return LeastSquaresSmooth{rep_->A, rep_->b, rep_->weight};
}

}  // namespace pdkit
