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

#ifndef PDKIT_CORE_EXT_REAL_HPP_
#define PDKIT_CORE_EXT_REAL_HPP_

#include <limits>
#include <string>

#include "pdkit/core/errors.hpp"

namespace pdkit {

// A value in ]-inf, +inf]. +inf is a tag, never an IEEE infinity taking part
// in arithmetic, so sums of indicator functions stay well defined.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  static ExtReal Finite(double v) {
    Require(v == v && v != std::numeric_limits<double>::infinity() &&
                v != -std::numeric_limits<double>::infinity(),
            ErrorCode::kInvalidArgument, "finite extended real expected");
    ExtReal r;
    r.value_ = v;
    return r;
  }
  static constexpr ExtReal PlusInfinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  double value() const {
    Require(!infinite_, ErrorCode::kInvalidArgument,
            "value() called on +inf");
    return value_;
  }

  // IEEE view for reporting only.
  constexpr double ToDouble() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  std::string ToString() const;

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) return PlusInfinity();
    return Finite(a.value_ + b.value_);
  }
  ExtReal& operator+=(ExtReal other) { return *this = *this + other; }

  // Multiplication by a positive scalar.
  friend ExtReal operator*(double alpha, ExtReal a) {
    Require(alpha > 0.0, ErrorCode::kInvalidParameter,
            "extended reals scale only by positive factors");
    if (a.infinite_) return a;
    return Finite(alpha * a.value_);
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(ExtReal a, ExtReal b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return !(b < a); }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace pdkit

#endif  // PDKIT_CORE_EXT_REAL_HPP_
