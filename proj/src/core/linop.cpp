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

#include "pdkit/core/linop.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "pdkit/core/errors.hpp"

namespace pdkit {

Vec MakeVec(std::span<const double> values) {
  Vec v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    Require(std::isfinite(values[i]), ErrorCode::kInvalidArgument,
            "vector entry " + std::to_string(i) + " is not finite");
    v[static_cast<Index>(i)] = values[i];
  }
  return v;
}

bool AllFinite(const Vec& v) { return v.allFinite(); }

void RequireFinite(const Vec& v, std::string_view what) {
  Require(v.allFinite(), ErrorCode::kInvalidArgument,
          std::string(what) + " has non-finite entries");
}

struct LinOp::Rep {
  enum class Kind { kDense, kSparse, kIdentity, kZero };
  Kind kind = Kind::kZero;
  Index rows = 0;
  Index cols = 0;
  Matrix dense;
  SparseMatrix sparse;
  double norm_bound = 0.0;
  bool certified = true;
};

LinOp::LinOp() : rep_(std::make_shared<Rep>()) {}

LinOp::LinOp(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

LinOp LinOp::Finish(std::shared_ptr<Rep> rep) {
  LinOp op{std::shared_ptr<const Rep>(rep)};
  switch (rep->kind) {
    case Rep::Kind::kIdentity:
      rep->norm_bound = rep->rows > 0 ? 1.0 : 0.0;
      break;
    case Rep::Kind::kZero:
      rep->norm_bound = 0.0;
      break;
    default: {
      PowerIterationResult r = PowerIteration(op);
      rep->norm_bound = r.norm_bound;
      rep->certified = r.converged;
    }
  }
  return op;
}

LinOp LinOp::Dense(Matrix m) {
  Require(m.allFinite(), ErrorCode::kInvalidArgument,
          "dense operator has non-finite entries");
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kDense;
  rep->rows = m.rows();
  rep->cols = m.cols();
  rep->dense = std::move(m);
  return Finish(std::move(rep));
}

LinOp LinOp::Sparse(Index rows, Index cols,
                    const std::vector<Triplet>& entries) {
  SparseMatrix m(rows, cols);
  for (const Triplet& t : entries) {
    Require(t.row() >= 0 && t.row() < rows && t.col() >= 0 && t.col() < cols,
            ErrorCode::kInvalidArgument, "sparse entry out of range");
    Require(std::isfinite(t.value()), ErrorCode::kInvalidArgument,
            "sparse entry is not finite");
  }
  m.setFromTriplets(entries.begin(), entries.end());
  return FromSparse(std::move(m));
}

LinOp LinOp::FromSparse(SparseMatrix m) {
  m.makeCompressed();
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kSparse;
  rep->rows = m.rows();
  rep->cols = m.cols();
  rep->sparse = std::move(m);
  return Finish(std::move(rep));
}

LinOp LinOp::Identity(Index n) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kIdentity;
  rep->rows = n;
  rep->cols = n;
  return Finish(std::move(rep));
}

LinOp LinOp::Zero(Index rows, Index cols) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Rep::Kind::kZero;
  rep->rows = rows;
  rep->cols = cols;
  return Finish(std::move(rep));
}

LinOp LinOp::VStack(std::span<const LinOp> blocks) {
  Require(!blocks.empty(), ErrorCode::kInvalidArgument,
          "cannot stack an empty list of operators");
  const Index cols = blocks.front().cols();
  Index rows = 0;
  bool all_dense = true;
  for (const LinOp& b : blocks) {
    Require(b.cols() == cols, ErrorCode::kInvalidArgument,
            "stacked operators must share a column count");
    rows += b.rows();
    all_dense = all_dense && b.rep_->kind == Rep::Kind::kDense;
  }
  if (all_dense) {
    Matrix m(rows, cols);
    Index offset = 0;
    for (const LinOp& b : blocks) {
      m.middleRows(offset, b.rows()) = b.rep_->dense;
      offset += b.rows();
    }
    return Dense(std::move(m));
  }
  std::vector<Triplet> entries;
  Index offset = 0;
  for (const LinOp& b : blocks) {
    const Rep& r = *b.rep_;
    switch (r.kind) {
      case Rep::Kind::kIdentity:
        for (Index i = 0; i < r.rows; ++i) entries.emplace_back(offset + i, i, 1.0);
        break;
      case Rep::Kind::kZero:
        break;
      case Rep::Kind::kDense:
        for (Index i = 0; i < r.rows; ++i)
          for (Index j = 0; j < r.cols; ++j)
            if (r.dense(i, j) != 0.0) entries.emplace_back(offset + i, j, r.dense(i, j));
        break;
      case Rep::Kind::kSparse:
        for (Index i = 0; i < r.sparse.outerSize(); ++i)
          for (SparseMatrix::InnerIterator it(r.sparse, i); it; ++it)
            entries.emplace_back(offset + it.row(), it.col(), it.value());
        break;
    }
    offset += r.rows;
  }
  return Sparse(rows, cols, entries);
}

Index LinOp::rows() const { return rep_->rows; }
Index LinOp::cols() const { return rep_->cols; }
double LinOp::norm_bound() const { return rep_->norm_bound; }
bool LinOp::norm_certified() const { return rep_->certified; }
bool LinOp::is_identity() const { return rep_->kind == Rep::Kind::kIdentity; }
bool LinOp::is_zero() const { return rep_->kind == Rep::Kind::kZero; }
bool LinOp::is_sparse() const { return rep_->kind == Rep::Kind::kSparse; }

Vec LinOp::Apply(const Vec& x) const {
  Require(x.size() == rep_->cols, ErrorCode::kInvalidArgument,
          "operator apply: dimension mismatch");
  switch (rep_->kind) {
    case Rep::Kind::kDense: return rep_->dense * x;
    case Rep::Kind::kSparse: return rep_->sparse * x;
    case Rep::Kind::kIdentity: return x;
    case Rep::Kind::kZero: break;
  }
  return Vec::Zero(rep_->rows);
}

Vec LinOp::Adjoint(const Vec& y) const {
  Require(y.size() == rep_->rows, ErrorCode::kInvalidArgument,
          "operator adjoint: dimension mismatch");
  switch (rep_->kind) {
    case Rep::Kind::kDense: return rep_->dense.transpose() * y;
    case Rep::Kind::kSparse: return rep_->sparse.transpose() * y;
    case Rep::Kind::kIdentity: return y;
    case Rep::Kind::kZero: break;
  }
  return Vec::Zero(rep_->cols);
}

Matrix LinOp::ToDense() const {
  switch (rep_->kind) {
    case Rep::Kind::kDense: return rep_->dense;
    case Rep::Kind::kSparse: return Matrix(rep_->sparse);
    case Rep::Kind::kIdentity: return Matrix::Identity(rep_->rows, rep_->cols);
    case Rep::Kind::kZero: break;
  }
  return Matrix::Zero(rep_->rows, rep_->cols);
}

PowerIterationResult PowerIteration(const LinOp& op,
                                    const PowerIterationOptions& options) {
  Require(options.tol > 0.0, ErrorCode::kInvalidParameter,
          "power iteration tolerance must be positive");
  PowerIterationResult result;
  if (op.rows() == 0 || op.cols() == 0) return result;

  // All-ones start perturbed by a seeded random vector.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  Vec v(op.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = 1.0 + unif(rng);
  v.normalize();

  double previous = 0.0;
  result.converged = false;
  for (int k = 1; k <= options.max_iter; ++k) {
    Vec gram_v = op.Adjoint(op.Apply(v));
    const double norm = gram_v.norm();
    result.iterations = k;
    if (norm == 0.0) {
      // v lies in the null space; for a zero operator this is exact.
      result.sigma = 0.0;
      result.converged = true;
      break;
    }
    // For unit v, sqrt(|L^T L v|) is a lower bound on the top singular value
    // that is monotone along the iteration.
    result.sigma = std::sqrt(norm);
    v = gram_v / norm;
    if (k > 1 && std::abs(result.sigma - previous) <=
                     1e-2 * options.tol * result.sigma) {
      result.converged = true;
      break;
    }
    previous = result.sigma;
  }
  result.norm_bound = result.sigma * (1.0 + 10.0 * options.tol);
  return result;
}

LinOp IncidenceOperator(const GraphIncidence& graph) {
  Require(graph.vertices >= 0, ErrorCode::kInvalidArgument,
          "negative vertex count");
  std::vector<Triplet> entries;
  entries.reserve(2 * graph.edges.size());
  Index row = 0;
  for (const GraphEdge& e : graph.edges) {
    Require(e.p >= 0 && e.p < graph.vertices && e.q >= 0 &&
                e.q < graph.vertices,
            ErrorCode::kInvalidArgument,
            "edge " + std::to_string(row) + " references a missing vertex");
    Require(e.p != e.q, ErrorCode::kInvalidArgument,
            "edge " + std::to_string(row) + " is a self-loop");
    Require(std::isfinite(e.weight) && e.weight >= 0.0,
            ErrorCode::kInvalidArgument,
            "edge " + std::to_string(row) + " has an invalid weight");
    const double s = std::sqrt(e.weight);
    entries.emplace_back(row, e.p, s);
    entries.emplace_back(row, e.q, -s);
    ++row;
  }
  return LinOp::Sparse(static_cast<Index>(graph.edges.size()), graph.vertices,
                       entries);
}

GraphIncidence GridGraph(Index rows, Index cols) {
  GraphIncidence g;
  g.vertices = rows * cols;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Index p = r * cols + c;
      if (c + 1 < cols) g.edges.push_back({p, p + 1, 1.0});
      if (r + 1 < rows) g.edges.push_back({p, p + cols, 1.0});
    }
  }
  return g;
}

GraphIncidence ChainGraph(Index n, double weight) {
  GraphIncidence g;
  g.vertices = n;
  for (Index i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, weight});
  return g;
}

}  // namespace pdkit
