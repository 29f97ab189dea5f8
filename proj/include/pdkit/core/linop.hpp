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

// Vectors and linear operators shared by every solver.
//
// A LinOp is an immutable K x N linear map backed either by a dense matrix or
// by a compressed sparse matrix. Every LinOp carries an upper bound on its
// spectral norm, computed once at construction by power iteration and
// inflated by (1 + 10 tol) so that step-size guards stay conservative.

#ifndef PDKIT_CORE_LINOP_HPP_
#define PDKIT_CORE_LINOP_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace pdkit {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

// Builds a vector from raw values, rejecting NaN and infinities.
Vec MakeVec(std::span<const double> values);
bool AllFinite(const Vec& v);
void RequireFinite(const Vec& v, std::string_view what);

struct PowerIterationOptions {
  double tol = 1e-8;
  int max_iter = 20000;
  std::uint64_t seed = 0;
};

struct PowerIterationResult {
  double sigma = 0.0;       // estimate of the largest singular value
  double norm_bound = 0.0;  // sigma * (1 + 10 tol)
  int iterations = 0;
  bool converged = true;    // false: max_iter hit, certificate degraded
};

class LinOp;

PowerIterationResult PowerIteration(const LinOp& op,
                                    const PowerIterationOptions& options = {});

class LinOp {
 public:
  // Zero-sized operator; mostly useful as a placeholder.
  LinOp();

  static LinOp Dense(Matrix m);
  static LinOp Sparse(Index rows, Index cols,
                      const std::vector<Triplet>& entries);
  static LinOp FromSparse(SparseMatrix m);
  static LinOp Identity(Index n);
  static LinOp Zero(Index rows, Index cols);
  // Vertical concatenation [L_1; ...; L_M]. All blocks share a column count.
  static LinOp VStack(std::span<const LinOp> blocks);

  Index rows() const;
  Index cols() const;

  Vec Apply(const Vec& x) const;
  Vec Adjoint(const Vec& y) const;

  // Certified upper bound on the spectral norm.
  double norm_bound() const;
  // False when the power iteration hit its iteration cap.
  bool norm_certified() const;

  bool is_identity() const;
  bool is_zero() const;
  bool is_sparse() const;

  Matrix ToDense() const;

 private:
  struct Rep;
  explicit LinOp(std::shared_ptr<const Rep> rep);
  static LinOp Finish(std::shared_ptr<Rep> rep);

  std::shared_ptr<const Rep> rep_;
};

struct GraphEdge {
  Index p = 0;
  Index q = 0;
  double weight = 1.0;
};

struct GraphIncidence {
  Index vertices = 0;
  std::vector<GraphEdge> edges;
};

// (Lx)_e = sqrt(w_e) (x_p - x_q). Sparse, |E| x |V|.
LinOp IncidenceOperator(const GraphIncidence& graph);

// 4-neighbour grid graph with unit weights, vertex index r * cols + c.
GraphIncidence GridGraph(Index rows, Index cols);
GraphIncidence ChainGraph(Index n, double weight = 1.0);

}  // namespace pdkit

#endif  // PDKIT_CORE_LINOP_HPP_
