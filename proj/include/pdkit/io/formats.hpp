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

// Plain-text input formats and output writers.
//
// Every parser throws Error(kParse) with a "<source>:<line>: " prefix on
// malformed input and Error(kIo) when a file cannot be opened. Doubles are
// written with %.17g so that every emitted file round-trips exactly.

#ifndef PDKIT_IO_FORMATS_HPP_
#define PDKIT_IO_FORMATS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "pdkit/core/linop.hpp"
#include "pdkit/core/lp_duality.hpp"
#include "pdkit/core/mrf.hpp"
#include "pdkit/core/setcover.hpp"
#include "pdkit/core/solvers.hpp"

namespace pdkit::io {

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

// "%.17g"
std::string FormatDouble(double v);

// "V <count>" then "E <p> <q> <weight>" per edge, 0-indexed.
GraphIncidence ParseGraph(const std::string& text, const std::string& source = "graph");

// Problem file:
//   N <n>
//   MATRIX <name> <rows> <cols>     followed by rows*cols numbers
//   VECTOR <name> <k>               followed by k numbers
//   GRAPH <name> <vertices>         followed by "E p q w" lines and END
//   GRAPHFILE <name> <path>         path relative to base_dir
//   F <fn>
//   H ZERO | SQ(w, y) | LSQ(A, b) | LSQ(A, b, w)
//   G <fn> <operator>               operator: I, a matrix name or a graph name
// with
//   <fn> := ZERO | IND_NONNEG | L1(lambda) | SQ(w, y) | BOX(lo, hi) | POW(p, lambda)
//         | TRANSLATE(<fn>, c) | SCALE(<fn>, alpha) | SEPARABLE(<fn>, ...)
// Arguments are numbers, inf, -inf or vector names. '#' starts a comment.
CompositeProblem ParseProblem(const std::string& text, const std::string& base_dir = ".",
                              const std::string& source = "problem");
CompositeProblem LoadProblem(const std::string& path);

// "N K", then the c row, the b row and K rows of L.
LpProblem ParseLp(const std::string& text, const std::string& source = "lp");

// "K N", then per set "cost m i_1 ... i_m" with 0-indexed elements.
SetCoverInstance ParseSetCover(const std::string& text,
                               const std::string& source = "setcover");

// "V <n> L <k>", n lines of k unary costs, then "E <p> <q>" followed by k
// rows of k pairwise costs per edge. "GRID <rows> <cols>" is optional.
MrfModel ParseMrf(const std::string& text, const std::string& source = "mrf");

// Whitespace-separated numbers.
Vec ParseVector(const std::string& text, const std::string& source = "vector");
Labeling ParseLabeling(const std::string& text, const std::string& source = "labeling");

// One value per line.
std::string FormatVector(const Vec& v);
std::string FormatLabeling(const Labeling& x);
// iter,dual,best_primal,disagreements
std::string FormatDdTrace(const std::vector<DdRecord>& trace);

}  // namespace pdkit::io

#endif  // PDKIT_IO_FORMATS_HPP_
