// Copyright 2026 The qht Authors
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

#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qht {

/// An error exponent in nats per copy: a nonnegative real or +infinity.
///
/// Values in (-1e-12, 0) are treated as round-off and clamped to zero;
/// anything more negative is rejected.
class Exponent {
 public:
  constexpr Exponent() = default;

  explicit Exponent(double v) {
    if (std::isnan(v)) throw std::invalid_argument("Exponent: NaN");
    if (v <= 0.0) {  // also maps -0 to +0
      if (v < -kNegativeSlack) {
        throw std::invalid_argument("Exponent: negative value " +
                                    std::to_string(v));
      }
      v = 0.0;
    }
    if (std::isinf(v)) {
      infinite_ = true;
      v = 0.0;
    }
    value_ = v;
  }

  static constexpr Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// The numeric value; +inf for an infinite exponent.
  double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  double in_bits() const { return value() / std::log(2.0); }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::partial_ordering operator<=>(const Exponent& a,
                                           const Exponent& b) {
    return a.value() <=> b.value();
  }

  friend std::ostream& operator<<(std::ostream& os, const Exponent& e) {
    if (e.infinite_) return os << "inf";
    return os << e.value_;
  }

 private:
  static constexpr double kNegativeSlack = 1e-12;
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace qht
