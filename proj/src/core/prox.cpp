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

#include "pdkit/core/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pdkit/core/errors.hpp"

namespace pdkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Param op Param -> Param, vector-valued as soon as either input is.
template <typename F>
Param Combine(const Param& a, const Param& b, F op) {
  if (!a.is_vector() && !b.is_vector()) return Param(op(a.scalar(), b.scalar()));
  const Index n = a.is_vector() ? a.vector().size() : b.vector().size();
  Require(!a.is_vector() || !b.is_vector() || a.vector().size() == b.vector().size(),
          ErrorCode::kInvalidArgument, "parameter dimensions disagree");
  Vec out(n);
  for (Index i = 0; i < n; ++i) out[i] = op(a.at(i), b.at(i));
  return Param(std::move(out));
}

template <typename F>
Param Map(const Param& a, F op) {
  return Combine(a, Param(0.0), [&](double x, double) { return op(x); });
}

std::optional<Index> MergeDims(std::optional<Index> a, std::optional<Index> b) {
  if (a && b) {
    Require(*a == *b, ErrorCode::kInvalidArgument, "parameter dimensions disagree");
  }
  return a ? a : b;
}

void CheckStep(double gamma) {
  Require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::kInvalidStep,
          "prox step must be positive and finite, got " + Num(gamma));
}

}  // namespace

Vec Param::Resolve(Index n) const {
  if (is_vector_) {
    Require(values_.size() == n, ErrorCode::kInvalidArgument,
            "parameter has dimension " + std::to_string(values_.size()) +
                ", expected " + std::to_string(n));
    return values_;
  }
  return Vec::Constant(n, scalar_);
}

std::string Param::ToString() const {
  if (!is_vector_) return Num(scalar_);
  std::string s = "[";
  for (Index i = 0; i < values_.size(); ++i) {
    if (i) s += " ";
    s += Num(values_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

class ProxFnImpl {
 public:
  virtual ~ProxFnImpl() = default;
  virtual ExtReal Eval(const Vec& x) const = 0;
  virtual Vec Prox(const Vec& x, double gamma) const = 0;
  virtual std::optional<ProxFn> Conjugate() const { return std::nullopt; }
  virtual std::string Describe() const = 0;
  virtual std::optional<Index> dim() const { return std::nullopt; }
  virtual bool is_zero() const { return false; }
  virtual std::optional<IsotropicQuadratic> isotropic_quadratic() const {
    return std::nullopt;
  }
};

ProxFn::ProxFn(std::shared_ptr<const ProxFnImpl> impl) : impl_(std::move(impl)) {}

namespace {

void CheckDim(const ProxFnImpl& f, const Vec& x) {
  if (auto d = f.dim()) {
    Require(x.size() == *d, ErrorCode::kInvalidArgument,
            f.Describe() + ": expected dimension " + std::to_string(*d) +
                ", got " + std::to_string(x.size()));
  }
}

}  // namespace

ExtReal ProxFn::Eval(const Vec& x) const {
  CheckDim(*impl_, x);
  return impl_->Eval(x);
}

Vec ProxFn::Prox(const Vec& x, double gamma) const {
  CheckStep(gamma);
  CheckDim(*impl_, x);
  return impl_->Prox(x, gamma);
}

std::optional<ProxFn> ProxFn::Conjugate() const { return impl_->Conjugate(); }

std::string ProxFn::conjugate_tag() const {
  auto c = impl_->Conjugate();
  return c ? c->Describe() : std::string();
}

std::string ProxFn::Describe() const { return impl_->Describe(); }
std::optional<Index> ProxFn::dim() const { return impl_->dim(); }
bool ProxFn::is_zero() const { return impl_->is_zero(); }
std::optional<IsotropicQuadratic> ProxFn::isotropic_quadratic() const {
  return impl_->isotropic_quadratic();
}

// ---- standalone maps -------------------------------------------------------

Vec ProxL1(const Vec& x, double gamma) {
  CheckStep(gamma);
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]) - gamma;
    out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
  }
  return out;
}

double ProxPowerScalar(double x, double gamma, double p) {
  CheckStep(gamma);
  Require(p >= 1.0, ErrorCode::kUnsupportedStructure,
          "|x|^p with p < 1 is nonconvex and has no unique prox");
  if (p == 1.0) {
    const double a = std::abs(x) - gamma;
    return a > 0.0 ? std::copysign(a, x) : 0.0;
  }
  if (p == 2.0) return x / (1.0 + 2.0 * gamma);
  const double a = std::abs(x);
  if (a == 0.0) return 0.0;
  // Root of phi(s) = gamma p s^{p-1} + s - a on [0, a]; phi is increasing.
  auto phi = [&](double s) { return gamma * p * std::pow(s, p - 1.0) + s - a; };
  auto dphi = [&](double s) {
    return gamma * p * (p - 1.0) * std::pow(s, p - 2.0) + 1.0;
  };
  double lo = 0.0;
  double hi = a;
  double s = a / (1.0 + gamma * p * std::pow(a, p - 2.0));
  if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = phi(s);
    if (f == 0.0) break;
    if (f > 0.0) hi = s; else lo = s;
    const double d = dphi(s);
    double next = s - f / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-12 * (1.0 + a) || hi - lo <= 1e-15 * (1.0 + a)) {
      s = next;
      break;
    }
    s = next;
  }
  return std::copysign(s, x);
}

Vec ProxPower(const Vec& x, double gamma, double p) {
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = ProxPowerScalar(x[i], gamma, p);
  return out;
}

Vec ProjectBox(const Vec& x, const Param& lo, const Param& hi) {
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double l = lo.at(i);
    const double h = hi.at(i);
    Require(l <= h, ErrorCode::kInvalidSet,
            "box is empty in coordinate " + std::to_string(i));
    out[i] = std::clamp(x[i], l, h);
  }
  return out;
}

Vec ProxConjugate(const ProxFn& f, const Vec& x, double gamma) {
  return x - f.Prox(x, gamma);
}

// ---- catalog implementations ----------------------------------------------

namespace {

class ZeroImpl final : public ProxFnImpl {
 public:
  ExtReal Eval(const Vec&) const override { return ExtReal(); }
  Vec Prox(const Vec& x, double) const override { return x; }
  std::optional<ProxFn> Conjugate() const override { return ZeroIndicator(); }
  std::string Describe() const override { return "ZERO"; }
  bool is_zero() const override { return true; }
  std::optional<IsotropicQuadratic> isotropic_quadratic() const override {
    return IsotropicQuadratic{};
  }
};

class ZeroIndicatorImpl final : public ProxFnImpl {
 public:
  ExtReal Eval(const Vec& x) const override {
    return x.isZero(0.0) ? ExtReal() : ExtReal::PlusInfinity();
  }
  Vec Prox(const Vec& x, double) const override { return Vec::Zero(x.size()); }
  std::optional<ProxFn> Conjugate() const override { return Zero(); }
  std::string Describe() const override { return "IND_ZERO"; }
};

class L1Impl final : public ProxFnImpl {
 public:
  explicit L1Impl(double lambda) : lambda_(lambda) {}
  ExtReal Eval(const Vec& x) const override {
    return ExtReal::Finite(lambda_ * x.lpNorm<1>());
  }
  Vec Prox(const Vec& x, double gamma) const override {
    if (lambda_ == 0.0) return x;
    return ProxL1(x, gamma * lambda_);
  }
  std::optional<ProxFn> Conjugate() const override {
    return BoxIndicator(-lambda_, lambda_);
  }
  std::string Describe() const override { return "L1(" + Num(lambda_) + ")"; }

 private:
  double lambda_;
};

class QuadraticImpl final : public ProxFnImpl {
 public:
  QuadraticImpl(double weight, Param center, Param offset)
      : weight_(weight), center_(std::move(center)), offset_(std::move(offset)) {
    dim_ = MergeDims(center_.dim(), offset_.dim());
  }
  ExtReal Eval(const Vec& x) const override {
    double s = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double d = x[i] - center_.at(i);
      s += 0.5 * weight_ * d * d + offset_.at(i);
    }
    return ExtReal::Finite(s);
  }
  Vec Prox(const Vec& x, double gamma) const override {
    const double gw = gamma * weight_;
    Vec out(x.size());
    for (Index i = 0; i < x.size(); ++i)
      out[i] = (x[i] + gw * center_.at(i)) / (1.0 + gw);
    return out;
  }
  std::optional<ProxFn> Conjugate() const override {
    // (w/2)(x-c)^2 + o  <->  (1/(2w))(u + w c)^2 - (w/2) c^2 - o
    const double w = weight_;
    Param center = Map(center_, [w](double c) { return -w * c; });
    Param offset = Combine(center_, offset_, [w](double c, double o) {
      return -0.5 * w * c * c - o;
    });
    return Quadratic(1.0 / w, std::move(center), std::move(offset));
  }
  std::string Describe() const override {
    std::string s = "SQ(" + Num(weight_) + "," + center_.ToString();
    if (offset_.is_vector() || offset_.scalar() != 0.0) s += "," + offset_.ToString();
    return s + ")";
  }
  std::optional<Index> dim() const override { return dim_; }
  std::optional<IsotropicQuadratic> isotropic_quadratic() const override {
    return IsotropicQuadratic{weight_, center_, offset_};
  }

 private:
  double weight_;
  Param center_;
  Param offset_;
  std::optional<Index> dim_;
};

class BoxImpl final : public ProxFnImpl {
 public:
  BoxImpl(Param lo, Param hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    dim_ = MergeDims(lo_.dim(), hi_.dim());
  }
  ExtReal Eval(const Vec& x) const override {
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] < lo_.at(i) || x[i] > hi_.at(i)) return ExtReal::PlusInfinity();
    }
    return ExtReal();
  }
  Vec Prox(const Vec& x, double) const override { return ProjectBox(x, lo_, hi_); }
  std::optional<ProxFn> Conjugate() const override {
    return SupportFunctionBox(lo_, hi_);
  }
  std::string Describe() const override {
    if (!lo_.is_vector() && !hi_.is_vector() && lo_.scalar() == 0.0 &&
        hi_.scalar() == kInf)
      return "IND_NONNEG";
    return "BOX(" + lo_.ToString() + "," + hi_.ToString() + ")";
  }
  std::optional<Index> dim() const override { return dim_; }

 private:
  Param lo_;
  Param hi_;
  std::optional<Index> dim_;
};

class SupportBoxImpl final : public ProxFnImpl {
 public:
  SupportBoxImpl(Param lo, Param hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    dim_ = MergeDims(lo_.dim(), hi_.dim());
  }
  ExtReal Eval(const Vec& u) const override {
    double s = 0.0;
    for (Index i = 0; i < u.size(); ++i) {
      double term = 0.0;
      if (u[i] > 0.0) term = u[i] * hi_.at(i);
      else if (u[i] < 0.0) term = u[i] * lo_.at(i);
      if (term == kInf) return ExtReal::PlusInfinity();
      s += term;
    }
    return ExtReal::Finite(s);
  }
  // Moreau: prox_{gamma sigma_C}(x) = x - P_{gamma C}(x).
  Vec Prox(const Vec& x, double gamma) const override {
    Param lo = Map(lo_, [gamma](double v) { return gamma * v; });
    Param hi = Map(hi_, [gamma](double v) { return gamma * v; });
    return x - ProjectBox(x, lo, hi);
  }
  std::optional<ProxFn> Conjugate() const override { return BoxIndicator(lo_, hi_); }
  std::string Describe() const override {
    return "SUPPORT_BOX(" + lo_.ToString() + "," + hi_.ToString() + ")";
  }
  std::optional<Index> dim() const override { return dim_; }

 private:
  Param lo_;
  Param hi_;
  std::optional<Index> dim_;
};

class PowerImpl final : public ProxFnImpl {
 public:
  PowerImpl(double p, double lambda) : p_(p), lambda_(lambda) {}
  ExtReal Eval(const Vec& x) const override {
    double s = 0.0;
    for (Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p_);
    return ExtReal::Finite(lambda_ * s);
  }
  Vec Prox(const Vec& x, double gamma) const override {
    return ProxPower(x, gamma * lambda_, p_);
  }
  std::optional<ProxFn> Conjugate() const override {
    if (p_ == 1.0) return BoxIndicator(-lambda_, lambda_);
    // lambda |x|^p  <->  (1 - 1/p) (lambda p)^{-1/(p-1)} |u|^q, 1/p + 1/q = 1
    const double q = p_ / (p_ - 1.0);
    const double coeff =
        (1.0 - 1.0 / p_) * std::pow(lambda_ * p_, -1.0 / (p_ - 1.0));
    return PowerFn(q, coeff);
  }
  std::string Describe() const override {
    return "POW(" + Num(p_) + "," + Num(lambda_) + ")";
  }

 private:
  double p_;
  double lambda_;
};

// Shared machinery for the consensus subspace D and its complement.
Vec BlockMean(const Vec& x, Index blocks, Index n) {
  Vec mean = Vec::Zero(n);
  for (Index m = 0; m < blocks; ++m) mean += x.segment(m * n, n);
  return mean / static_cast<double>(blocks);
}

class ConsensusImpl final : public ProxFnImpl {
 public:
  ConsensusImpl(Index blocks, Index n, bool complement)
      : blocks_(blocks), n_(n), complement_(complement) {}
  // Membership up to rounding of the projection, relative to the entries.
  ExtReal Eval(const Vec& x) const override {
    const double tol = 1e-12 * (1.0 + x.lpNorm<Eigen::Infinity>());
    const Vec mean = BlockMean(x, blocks_, n_);
    if (complement_) {
      if (mean.lpNorm<Eigen::Infinity>() > tol) return ExtReal::PlusInfinity();
      return ExtReal();
    }
    for (Index m = 0; m < blocks_; ++m) {
      if ((x.segment(m * n_, n_) - mean).lpNorm<Eigen::Infinity>() > tol) {
        return ExtReal::PlusInfinity();
      }
    }
    return ExtReal();
  }
  Vec Prox(const Vec& x, double) const override {
    const Vec mean = BlockMean(x, blocks_, n_);
    Vec out(x.size());
    for (Index m = 0; m < blocks_; ++m) {
      out.segment(m * n_, n_) = complement_ ? Vec(x.segment(m * n_, n_) - mean) : mean;
    }
    return out;
  }
  std::optional<ProxFn> Conjugate() const override {
    return complement_ ? ConsensusIndicator(blocks_, n_)
                       : SumZeroIndicator(blocks_, n_);
  }
  std::string Describe() const override {
    return std::string(complement_ ? "IND_SUMZERO(" : "IND_CONSENSUS(") +
           std::to_string(blocks_) + "," + std::to_string(n_) + ")";
  }
  std::optional<Index> dim() const override { return blocks_ * n_; }

 private:
  Index blocks_;
  Index n_;
  bool complement_;
};

class BlockSeparableImpl final : public ProxFnImpl {
 public:
  BlockSeparableImpl(std::vector<ProxFn> parts, std::vector<Index> sizes)
      : parts_(std::move(parts)), sizes_(std::move(sizes)) {
    total_ = std::accumulate(sizes_.begin(), sizes_.end(), Index{0});
  }
  ExtReal Eval(const Vec& x) const override {
    ExtReal sum;
    Index off = 0;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      sum += parts_[k].Eval(x.segment(off, sizes_[k]));
      off += sizes_[k];
    }
    return sum;
  }
  // Blocks are independent; results are assembled in ascending block order.
  Vec Prox(const Vec& x, double gamma) const override {
    Vec out(x.size());
    Index off = 0;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      out.segment(off, sizes_[k]) = parts_[k].Prox(x.segment(off, sizes_[k]), gamma);
      off += sizes_[k];
    }
    return out;
  }
  std::optional<ProxFn> Conjugate() const override {
    std::vector<ProxFn> conj;
    for (const ProxFn& p : parts_) {
      auto c = p.Conjugate();
      if (!c) return std::nullopt;
      conj.push_back(*c);
    }
    return BlockSeparable(std::move(conj), sizes_);
  }
  std::string Describe() const override {
    std::string s = "SEPARABLE(";
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (k) s += ",";
      s += parts_[k].Describe();
      if (sizes_[k] != 1) s += ":" + std::to_string(sizes_[k]);
    }
    return s + ")";
  }
  std::optional<Index> dim() const override { return total_; }
  bool is_zero() const override {
    return std::all_of(parts_.begin(), parts_.end(),
                       [](const ProxFn& p) { return p.is_zero(); });
  }

 private:
  std::vector<ProxFn> parts_;
  std::vector<Index> sizes_;
  Index total_ = 0;
};

// ---- calculus --------------------------------------------------------------

class TranslateImpl final : public ProxFnImpl {
 public:
  TranslateImpl(ProxFn f, Param c) : f_(std::move(f)), c_(std::move(c)) {}
  ExtReal Eval(const Vec& x) const override {
    return f_.Eval(x - c_.Resolve(x.size()));
  }
  Vec Prox(const Vec& x, double gamma) const override {
    const Vec c = c_.Resolve(x.size());
    return c + f_.Prox(x - c, gamma);
  }
  std::optional<ProxFn> Conjugate() const override {
    auto fc = f_.Conjugate();
    if (!fc) return std::nullopt;
    return LinearTilt(*fc, c_);
  }
  std::string Describe() const override {
    return "TRANSLATE(" + f_.Describe() + "," + c_.ToString() + ")";
  }
  std::optional<Index> dim() const override { return MergeDims(f_.dim(), c_.dim()); }

 private:
  ProxFn f_;
  Param c_;
};

class TiltImpl final : public ProxFnImpl {
 public:
  TiltImpl(ProxFn f, Param c) : f_(std::move(f)), c_(std::move(c)) {}
  ExtReal Eval(const Vec& x) const override {
    ExtReal v = f_.Eval(x);
    if (v.is_infinite()) return v;
    return ExtReal::Finite(v.value() + x.dot(c_.Resolve(x.size())));
  }
  Vec Prox(const Vec& x, double gamma) const override {
    return f_.Prox(x - gamma * c_.Resolve(x.size()), gamma);
  }
  std::optional<ProxFn> Conjugate() const override {
    auto fc = f_.Conjugate();
    if (!fc) return std::nullopt;
    return Translate(*fc, c_);
  }
  std::string Describe() const override {
    return "TILT(" + f_.Describe() + "," + c_.ToString() + ")";
  }
  std::optional<Index> dim() const override { return MergeDims(f_.dim(), c_.dim()); }

 private:
  ProxFn f_;
  Param c_;
};

class ScaleFnImpl final : public ProxFnImpl {
 public:
  ScaleFnImpl(ProxFn f, double alpha) : f_(std::move(f)), alpha_(alpha) {}
  ExtReal Eval(const Vec& x) const override { return alpha_ * f_.Eval(x); }
  Vec Prox(const Vec& x, double gamma) const override {
    return f_.Prox(x, alpha_ * gamma);
  }
  std::optional<ProxFn> Conjugate() const override {
    auto fc = f_.Conjugate();
    if (!fc) return std::nullopt;
    return ScaleFn(ScaleArg(*fc, alpha_), alpha_);
  }
  std::string Describe() const override {
    return "SCALE(" + f_.Describe() + "," + Num(alpha_) + ")";
  }
  std::optional<Index> dim() const override { return f_.dim(); }
  bool is_zero() const override { return f_.is_zero(); }

 private:
  ProxFn f_;
  double alpha_;
};

class ScaleArgImpl final : public ProxFnImpl {
 public:
  ScaleArgImpl(ProxFn f, double alpha) : f_(std::move(f)), alpha_(alpha) {}
  ExtReal Eval(const Vec& x) const override { return f_.Eval(x / alpha_); }
  Vec Prox(const Vec& x, double gamma) const override {
    return alpha_ * f_.Prox(x / alpha_, gamma / (alpha_ * alpha_));
  }
  std::optional<ProxFn> Conjugate() const override {
    auto fc = f_.Conjugate();
    if (!fc) return std::nullopt;
    return ScaleArg(*fc, 1.0 / alpha_);
  }
  std::string Describe() const override {
    return "SCALE_ARG(" + f_.Describe() + "," + Num(alpha_) + ")";
  }
  std::optional<Index> dim() const override { return f_.dim(); }
  bool is_zero() const override { return f_.is_zero(); }

 private:
  ProxFn f_;
  double alpha_;
};

class ReflectImpl final : public ProxFnImpl {
 public:
  explicit ReflectImpl(ProxFn f) : f_(std::move(f)) {}
  ExtReal Eval(const Vec& x) const override { return f_.Eval(-x); }
  Vec Prox(const Vec& x, double gamma) const override {
    return -f_.Prox(-x, gamma);
  }
  std::optional<ProxFn> Conjugate() const override {
    auto fc = f_.Conjugate();
    if (!fc) return std::nullopt;
    return Reflect(*fc);
  }
  std::string Describe() const override { return "REFLECT(" + f_.Describe() + ")"; }
  std::optional<Index> dim() const override { return f_.dim(); }
  bool is_zero() const override { return f_.is_zero(); }

 private:
  ProxFn f_;
};

}  // namespace

ProxFn Zero() { return ProxFn(std::make_shared<ZeroImpl>()); }

ProxFn ZeroIndicator() { return ProxFn(std::make_shared<ZeroIndicatorImpl>()); }

ProxFn L1Norm(double lambda) {
  Require(std::isfinite(lambda) && lambda >= 0.0, ErrorCode::kInvalidParameter,
          "L1 weight must be finite and nonnegative");
  return ProxFn(std::make_shared<L1Impl>(lambda));
}

ProxFn SquaredDistance(double weight, Param center) {
  return Quadratic(weight, std::move(center), Param(0.0));
}

ProxFn Quadratic(double weight, Param center, Param offset) {
  Require(std::isfinite(weight) && weight >= 0.0, ErrorCode::kInvalidParameter,
          "quadratic weight must be finite and nonnegative");
  if (center.is_vector()) RequireFinite(center.vector(), "quadratic center");
  if (weight == 0.0 && !offset.is_vector() && offset.scalar() == 0.0 &&
      !center.is_vector())
    return Zero();
  Require(weight > 0.0, ErrorCode::kInvalidParameter,
          "quadratic weight must be positive");
  return ProxFn(std::make_shared<QuadraticImpl>(weight, std::move(center),
                                                std::move(offset)));
}

ProxFn BoxIndicator(Param lo, Param hi) {
  const auto dim = MergeDims(lo.dim(), hi.dim());
  const Index n = dim.value_or(1);
  for (Index i = 0; i < n; ++i) {
    Require(lo.at(i) <= hi.at(i), ErrorCode::kInvalidSet,
            "box is empty in coordinate " + std::to_string(i));
    Require(lo.at(i) != kInf && hi.at(i) != -kInf, ErrorCode::kInvalidSet,
            "box is empty in coordinate " + std::to_string(i));
  }
  return ProxFn(std::make_shared<BoxImpl>(std::move(lo), std::move(hi)));
}

ProxFn NonNegIndicator() { return BoxIndicator(0.0, kInf); }

ProxFn PowerFn(double p, double lambda) {
  Require(std::isfinite(p), ErrorCode::kInvalidParameter, "power must be finite");
  Require(p >= 1.0, ErrorCode::kUnsupportedStructure,
          "|x|^p with p < 1 is nonconvex and has no unique prox");
  Require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::kInvalidParameter,
          "power weight must be positive");
  return ProxFn(std::make_shared<PowerImpl>(p, lambda));
}

ProxFn SupportFunctionBox(Param lo, Param hi) {
  // Validates non-emptiness through the indicator constructor.
  BoxIndicator(lo, hi);
  return ProxFn(std::make_shared<SupportBoxImpl>(std::move(lo), std::move(hi)));
}

ProxFn ConsensusIndicator(Index blocks, Index block_size) {
  Require(blocks >= 1 && block_size >= 1, ErrorCode::kInvalidParameter,
          "consensus needs at least one nonempty block");
  return ProxFn(std::make_shared<ConsensusImpl>(blocks, block_size, false));
}

ProxFn SumZeroIndicator(Index blocks, Index block_size) {
  Require(blocks >= 1 && block_size >= 1, ErrorCode::kInvalidParameter,
          "sum-zero set needs at least one nonempty block");
  return ProxFn(std::make_shared<ConsensusImpl>(blocks, block_size, true));
}

ProxFn BlockSeparable(std::vector<ProxFn> parts, std::vector<Index> sizes) {
  Require(!parts.empty() && parts.size() == sizes.size(),
          ErrorCode::kInvalidParameter, "separable needs one size per part");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Require(sizes[k] >= 1, ErrorCode::kInvalidParameter, "empty separable block");
    if (auto d = parts[k].dim()) {
      Require(*d == sizes[k], ErrorCode::kInvalidParameter,
              "separable block " + std::to_string(k) + " has dimension " +
                  std::to_string(*d) + ", expected " + std::to_string(sizes[k]));
    }
  }
  return ProxFn(std::make_shared<BlockSeparableImpl>(std::move(parts), std::move(sizes)));
}

ProxFn Translate(const ProxFn& f, Param c) {
  if (c.is_vector()) RequireFinite(c.vector(), "translation");
  return ProxFn(std::make_shared<TranslateImpl>(f, std::move(c)));
}

ProxFn LinearTilt(const ProxFn& f, Param c) {
  if (c.is_vector()) RequireFinite(c.vector(), "tilt");
  return ProxFn(std::make_shared<TiltImpl>(f, std::move(c)));
}

ProxFn ScaleFn(const ProxFn& f, double alpha) {
  Require(std::isfinite(alpha) && alpha > 0.0, ErrorCode::kInvalidParameter,
          "scalar multiplication needs alpha in ]0, +inf[");
  return ProxFn(std::make_shared<ScaleFnImpl>(f, alpha));
}

ProxFn ScaleArg(const ProxFn& f, double alpha) {
  Require(std::isfinite(alpha) && alpha != 0.0, ErrorCode::kInvalidParameter,
          "argument scaling needs a nonzero finite alpha");
  return ProxFn(std::make_shared<ScaleArgImpl>(f, alpha));
}

ProxFn Reflect(const ProxFn& f) { return ProxFn(std::make_shared<ReflectImpl>(f)); }

ProxFn Separable(std::vector<ProxFn> scalar_parts) {
  std::vector<Index> sizes(scalar_parts.size(), 1);
  return BlockSeparable(std::move(scalar_parts), std::move(sizes));
}

std::string SumConjugateTag(const ProxFn& f, const ProxFn& g) {
  const std::string fc = f.conjugate_tag();
  const std::string gc = g.conjugate_tag();
  if (fc.empty() || gc.empty()) return {};
  return "INFCONV(" + fc + "," + gc + ")";
}

std::pair<ProxFn, ProxFn> SupportIndicatorPair(Param lo, Param hi) {
  ProxFn indicator = BoxIndicator(lo, hi);
  return {SupportFunctionBox(std::move(lo), std::move(hi)), indicator};
}

ConjugateEstimate ConjugateValue1D(const ProxFn& f, double u, const Grid1D& grid) {
  Require(grid.step > 0.0 && grid.hi > grid.lo, ErrorCode::kInvalidParameter,
          "grid must be nonempty with a positive step");
  const long count = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 0.5));
  ConjugateEstimate est;
  double best = -kInf;
  long best_k = -1;
  long first_finite = -1;
  long last_finite = -1;
  Vec x(1);
  for (long k = 0; k <= count; ++k) {
    x[0] = grid.lo + static_cast<double>(k) * grid.step;
    ExtReal fx = f.Eval(x);
    if (fx.is_infinite()) continue;
    if (first_finite < 0) first_finite = k;
    last_finite = k;
    const double val = u * x[0] - fx.value();
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  Require(best_k >= 0, ErrorCode::kInvalidArgument,
          "function is +inf on the whole grid");
  est.value = best;
  est.unbounded = (best_k == 0 && first_finite == 0) ||
                  (best_k == count && last_finite == count);
  return est;
}

}  // namespace pdkit
