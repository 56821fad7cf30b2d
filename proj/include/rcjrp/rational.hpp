// Copyright 2026 The rcjrp Authors
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

#include <cstdint>
#include <string>
#include <string_view>

namespace rcjrp {

/// Exact rational over 64-bit integers. Always stored normalized: gcd(|num|,
/// den) == 1 and den > 0. Arithmetic uses 128-bit intermediates and throws
/// std::overflow_error if a reduced result no longer fits in 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "a", "-a", or "a/b".
  static Rational from_string(std::string_view s);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const;
  std::string str() const;

  bool is_integer() const { return den_ == 1; }
  bool positive() const { return num_ > 0; }

  /// True when other / *this is a positive integer.
  bool divides(const Rational& other) const;

  /// Least positive value that is an integer multiple of both a and b.
  /// For a = p/q and b = r/s in lowest terms this is lcm(p, r) / gcd(q, s).
  static Rational lcm(const Rational& a, const Rational& b);

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Integer power with overflow check.
std::int64_t checked_ipow(std::int64_t base, int exp);

}  // namespace rcjrp
