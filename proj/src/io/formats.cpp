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

#include "pdkit/io/formats.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "pdkit/core/errors.hpp"

namespace pdkit::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> ToNumber(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  if (tok == "inf" || tok == "+inf") return kInf;
  if (tok == "-inf") return -kInf;
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size() || std::isnan(v) || std::isinf(v)) return std::nullopt;
  return v;
}

struct Token {
  std::string text;
  int line = 0;
};

// Whitespace tokens of the whole input with '#' comments removed.
class Scanner {
 public:
  Scanner(const std::string& text, std::string source) : source_(std::move(source)) {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::istringstream words(raw);
      std::string w;
      while (words >> w) {
        tokens_.push_back({w, no});
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  int line() const {
    if (done()) return tokens_.empty() ? 0 : tokens_.back().line;
    return tokens_[pos_].line;
  }
  const std::string& Peek() const {
    if (done()) Error("unexpected end of input");
    return tokens_[pos_].text;
  }
  std::string Next(const char* what) {
    if (done()) Error(std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++].text;
  }
  double Number(const char* what) {
    const int at = line();
    const std::string tok = Next(what);
    const auto v = ToNumber(tok);
    if (!v) ErrorAt(at, std::string("expected ") + what + ", got '" + tok + "'");
    return *v;
  }
  double Finite(const char* what) {
    const int at = line();
    const double v = Number(what);
    if (!std::isfinite(v)) ErrorAt(at, std::string(what) + " must be finite");
    return v;
  }
  Index Count(const char* what, Index min = 0) {
    const int at = line();
    const std::string tok = Next(what);
    const char* begin = tok.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end != begin + tok.size() || tok.empty() || v < min) {
      ErrorAt(at, std::string("expected ") + what + ", got '" + tok + "'");
    }
    return static_cast<Index>(v);
  }
  void Expect(const std::string& keyword) {
    const int at = line();
    const std::string tok = Next(keyword.c_str());
    if (tok != keyword) ErrorAt(at, "expected '" + keyword + "', got '" + tok + "'");
  }
  // Remaining text of the current token's line, consuming its tokens.
  std::string RestOfLine() {
    const int at = line();
    std::string rest;
    while (!done() && tokens_[pos_].line == at) {
      if (!rest.empty()) rest += ' ';
      rest += tokens_[pos_++].text;
    }
    return rest;
  }
  void EndOfLine(int at) {
    if (!done() && tokens_[pos_].line == at) {
      ErrorAt(at, "unexpected trailing token '" + tokens_[pos_].text + "'");
    }
  }
  void EndOfInput() {
    if (!done()) Error("unexpected trailing token '" + Peek() + "'");
  }
  Vec Numbers(Index n, const char* what) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = Finite(what);
    return v;
  }

  [[noreturn]] void Error(const std::string& msg) const { ErrorAt(line(), msg); }
  [[noreturn]] void ErrorAt(int at, const std::string& msg) const {
    Fail(ErrorCode::kParse, source_ + ":" + std::to_string(at) + ": " + msg);
  }

 private:
  std::string source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- function expressions ---------------------------------------------------

struct Symbols {
  Index n = -1;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, Vec> vectors;
  std::map<std::string, GraphIncidence> graphs;

  bool Defined(const std::string& name) const {
    return matrices.count(name) || vectors.count(name) || graphs.count(name);
  }
};

class ExprParser {
 public:
  ExprParser(const std::string& text, const Symbols& symbols, const Scanner& scanner,
             int line)
      : text_(text), symbols_(symbols), scanner_(scanner), line_(line) {}

  ProxFn Function() {
    const std::string name = Identifier();
    if (name == "ZERO") return Zero();
    if (name == "IND_NONNEG") return NonNegIndicator();
    Open();
    ProxFn f = Zero();
    if (name == "L1") {
      f = L1Norm(Number("lambda"));
    } else if (name == "SQ") {
      const double w = Number("w");
      Comma();
      f = SquaredDistance(w, Argument("y"));
    } else if (name == "BOX") {
      Param lo = Argument("lo");
      Comma();
      f = BoxIndicator(std::move(lo), Argument("hi"));
    } else if (name == "POW") {
      const double p = Number("p");
      Comma();
      f = PowerFn(p, Number("lambda"));
    } else if (name == "TRANSLATE") {
      ProxFn inner = Function();
      Comma();
      f = Translate(inner, Argument("c"));
    } else if (name == "SCALE") {
      ProxFn inner = Function();
      Comma();
      f = ScaleFn(inner, Number("alpha"));
    } else if (name == "SEPARABLE") {
      std::vector<ProxFn> parts{Function()};
      while (TryPunct(',')) parts.push_back(Function());
      f = Separable(std::move(parts));
    } else {
      Error("unknown function '" + name + "'");
    }
    Close();
    return f;
  }

  // Smooth part for H lines.
  SmoothFn Smooth() {
    const std::string name = Identifier();
    if (name == "ZERO") return SmoothFn::Zero();
    Open();
    SmoothFn h;
    if (name == "SQ") {
      const double w = Number("w");
      Comma();
      Param y = Argument("y");
      if (symbols_.n < 0) Error("N must precede H");
      h = SmoothFn::SquaredDistance(w, y.Resolve(symbols_.n));
    } else if (name == "LSQ") {
      const std::string a = Identifier();
      const auto it = symbols_.matrices.find(a);
      if (it == symbols_.matrices.end()) Error("unknown matrix '" + a + "'");
      Comma();
      const std::string b = Identifier();
      const auto jt = symbols_.vectors.find(b);
      if (jt == symbols_.vectors.end()) Error("unknown vector '" + b + "'");
      double w = 1.0;
      if (TryPunct(',')) w = Number("w");
      h = SmoothFn::LeastSquares(LinOp::Dense(it->second), jt->second, w);
    } else {
      Error("unknown smooth function '" + name + "'");
    }
    Close();
    return h;
  }

  // Whatever follows the expression.
  std::string Rest() {
    SkipSpace();
    return text_.substr(pos_);
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  std::string Identifier() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) Error("expected a name at '" + text_.substr(start) + "'");
    return text_.substr(start, pos_ - start);
  }
  std::string Word() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '(' &&
           text_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }
  bool TryPunct(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void Punct(char c) {
    if (!TryPunct(c)) Error(std::string("expected '") + c + "'");
  }
  void Open() { Punct('('); }
  void Close() { Punct(')'); }
  void Comma() { Punct(','); }
  double Number(const char* what) {
    const std::string w = Word();
    const auto v = ToNumber(w);
    if (!v) Error(std::string("expected a number for ") + what + ", got '" + w + "'");
    return *v;
  }
  Param Argument(const char* what) {
    const std::string w = Word();
    if (const auto v = ToNumber(w)) return Param(*v);
    const auto it = symbols_.vectors.find(w);
    if (it == symbols_.vectors.end()) {
      Error(std::string("expected a number or vector name for ") + what + ", got '" + w +
            "'");
    }
    return Param(it->second);
  }
  [[noreturn]] void Error(const std::string& msg) const { scanner_.ErrorAt(line_, msg); }

  std::string text_;
  const Symbols& symbols_;
  const Scanner& scanner_;
  int line_;
  std::size_t pos_ = 0;
};

GraphIncidence ReadGraphBody(Scanner& s, Index vertices, bool until_end) {
  GraphIncidence g;
  g.vertices = vertices;
  while (!s.done()) {
    if (until_end && s.Peek() == "END") {
      s.Next("END");
      return g;
    }
    const int at = s.line();
    s.Expect("E");
    GraphEdge e;
    e.p = s.Count("vertex");
    e.q = s.Count("vertex");
    e.weight = s.Finite("weight");
    if (e.p >= vertices || e.q >= vertices) s.ErrorAt(at, "edge vertex out of range");
    if (e.p == e.q) s.ErrorAt(at, "self-loop edge");
    if (e.weight < 0.0) s.ErrorAt(at, "edge weight must be nonnegative");
    s.EndOfLine(at);
    g.edges.push_back(e);
  }
  if (until_end) s.Error("missing END");
  return g;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
  out.flush();
  Require(out.good(), ErrorCode::kIo, "failed writing '" + path + "'");
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GraphIncidence ParseGraph(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  const int at = s.line();
  s.Expect("V");
  const Index v = s.Count("vertex count", 1);
  s.EndOfLine(at);
  return ReadGraphBody(s, v, false);
}

CompositeProblem ParseProblem(const std::string& text, const std::string& base_dir,
                              const std::string& source) {
  Scanner s(text, source);
  Symbols sym;
  std::optional<ProxFn> f;
  std::optional<SmoothFn> h;
  std::vector<Term> terms;

  auto fresh_name = [&](int at) {
    const std::string name = s.Next("name");
    if (sym.Defined(name) || name == "I") s.ErrorAt(at, "name '" + name + "' reused");
    return name;
  };
  auto need_n = [&](int at) {
    if (sym.n < 0) s.ErrorAt(at, "N must be declared first");
  };

  while (!s.done()) {
    const int at = s.line();
    const std::string key = s.Next("directive");
    if (key == "N") {
      if (sym.n >= 0) s.ErrorAt(at, "N declared twice");
      sym.n = s.Count("dimension", 1);
      s.EndOfLine(at);
    } else if (key == "MATRIX") {
      const std::string name = fresh_name(at);
      const Index r = s.Count("rows", 1);
      const Index c = s.Count("cols", 1);
      s.EndOfLine(at);
      Matrix m(r, c);
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = s.Finite("matrix entry");
      sym.matrices[name] = std::move(m);
    } else if (key == "VECTOR") {
      const std::string name = fresh_name(at);
      const Index k = s.Count("length", 1);
      s.EndOfLine(at);
      sym.vectors[name] = s.Numbers(k, "vector entry");
    } else if (key == "GRAPH") {
      const std::string name = fresh_name(at);
      const Index v = s.Count("vertex count", 1);
      s.EndOfLine(at);
      sym.graphs[name] = ReadGraphBody(s, v, true);
    } else if (key == "GRAPHFILE") {
      const std::string name = fresh_name(at);
      std::filesystem::path p(s.Next("path"));
      s.EndOfLine(at);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      sym.graphs[name] = ParseGraph(ReadFile(p.string()), p.string());
    } else if (key == "F") {
      need_n(at);
      if (f) s.ErrorAt(at, "F declared twice");
      ExprParser e(s.RestOfLine(), sym, s, at);
      f = e.Function();
      if (!e.Rest().empty()) s.ErrorAt(at, "unexpected trailing text '" + e.Rest() + "'");
    } else if (key == "H") {
      need_n(at);
      if (h) s.ErrorAt(at, "H declared twice");
      ExprParser e(s.RestOfLine(), sym, s, at);
      h = e.Smooth();
      if (!e.Rest().empty()) s.ErrorAt(at, "unexpected trailing text '" + e.Rest() + "'");
    } else if (key == "G") {
      need_n(at);
      ExprParser e(s.RestOfLine(), sym, s, at);
      ProxFn g = e.Function();
      const std::string op = e.Rest();
      if (op.empty()) s.ErrorAt(at, "G needs an operator (I, a matrix or a graph)");
      if (op == "I") {
        terms.push_back({g, LinOp::Identity(sym.n)});
      } else if (const auto it = sym.matrices.find(op); it != sym.matrices.end()) {
        terms.push_back({g, LinOp::Dense(it->second)});
      } else if (const auto jt = sym.graphs.find(op); jt != sym.graphs.end()) {
        terms.push_back({g, IncidenceOperator(jt->second)});
      } else {
        s.ErrorAt(at, "unknown operator '" + op + "'");
      }
    } else {
      s.ErrorAt(at, "unknown directive '" + key + "'");
    }
  }
  if (sym.n < 0) s.Error("missing N");

  CompositeProblem p;
  p.n = sym.n;
  if (f) p.f = *f;
  if (h) p.h = *h;
  p.terms = std::move(terms);
  p.Validate();
  return p;
}

CompositeProblem LoadProblem(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return ParseProblem(ReadFile(path), dir.empty() ? "." : dir.string(), path);
}

LpProblem ParseLp(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  const Index n = s.Count("N", 1);
  const Index k = s.Count("K", 1);
  LpProblem lp;
  lp.c = s.Numbers(n, "c entry");
  lp.b = s.Numbers(k, "b entry");
  lp.L.resize(k, n);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < n; ++j) lp.L(i, j) = s.Finite("L entry");
  s.EndOfInput();
  lp.Validate();
  return lp;
}

SetCoverInstance ParseSetCover(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  SetCoverInstance inst;
  inst.universe = s.Count("K", 1);
  const Index sets = s.Count("N", 1);
  for (Index j = 0; j < sets; ++j) {
    const int at = s.line();
    inst.costs.push_back(s.Finite("cost"));
    const Index m = s.Count("member count");
    std::vector<Index> members;
    for (Index i = 0; i < m; ++i) members.push_back(s.Count("element"));
    s.EndOfLine(at);
    inst.sets.push_back(std::move(members));
  }
  s.EndOfInput();
  inst.Validate();
  return inst;
}

MrfModel ParseMrf(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  MrfModel m;
  int at = s.line();
  s.Expect("V");
  m.vertices = s.Count("vertex count", 1);
  s.Expect("L");
  m.labels = s.Count("label count", 1);
  s.EndOfLine(at);
  for (Index p = 0; p < m.vertices; ++p) {
    if (!s.done() && s.Peek() == "GRID") break;
    at = s.line();
    m.unary.push_back(s.Numbers(m.labels, "unary cost"));
    s.EndOfLine(at);
  }
  while (!s.done()) {
    at = s.line();
    const std::string key = s.Next("E or GRID");
    if (key == "GRID") {
      if (m.grid) s.ErrorAt(at, "GRID declared twice");
      GridShape g;
      g.rows = s.Count("rows", 1);
      g.cols = s.Count("cols", 1);
      s.EndOfLine(at);
      m.grid = g;
      // A GRID line may sit before the unary block.
      while (static_cast<Index>(m.unary.size()) < m.vertices) {
        const int row = s.line();
        m.unary.push_back(s.Numbers(m.labels, "unary cost"));
        s.EndOfLine(row);
      }
    } else if (key == "E") {
      MrfEdge e;
      e.p = s.Count("vertex");
      e.q = s.Count("vertex");
      s.EndOfLine(at);
      e.theta.resize(m.labels, m.labels);
      for (Index a = 0; a < m.labels; ++a) {
        const int row = s.line();
        for (Index b = 0; b < m.labels; ++b) e.theta(a, b) = s.Finite("pairwise cost");
        s.EndOfLine(row);
      }
      m.edges.push_back(std::move(e));
    } else {
      s.ErrorAt(at, "unknown directive '" + key + "'");
    }
  }
  if (static_cast<Index>(m.unary.size()) < m.vertices) s.Error("missing unary rows");
  m.Validate();
  return m;
}

Vec ParseVector(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  std::vector<double> v;
  while (!s.done()) v.push_back(s.Finite("number"));
  return Eigen::Map<const Vec>(v.data(), static_cast<Index>(v.size()));
}

Labeling ParseLabeling(const std::string& text, const std::string& source) {
  Scanner s(text, source);
  Labeling x;
  while (!s.done()) x.push_back(static_cast<int>(s.Count("label")));
  return x;
}

std::string FormatVector(const Vec& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) out += FormatDouble(v[i]) + "\n";
  return out;
}

std::string FormatLabeling(const Labeling& x) {
  std::string out;
  for (int l : x) out += std::to_string(l) + "\n";
  return out;
}

std::string FormatDdTrace(const std::vector<DdRecord>& trace) {
  std::string out = "iter,dual,best_primal,disagreements\n";
  for (const DdRecord& r : trace) {
    out += std::to_string(r.iter) + "," + FormatDouble(r.dual) + "," +
           FormatDouble(r.best_primal) + "," + std::to_string(r.disagreements) + "\n";
  }
  return out;
}

}  // namespace pdkit::io
