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

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "rcjrp/rational.hpp"

using rcjrp::Rational;

namespace {

// Independent check: the least common multiple of a/b and c/d is the smallest
// value in the scan x = n * max(a/b, c/d), n = 1, 2, ... that both divide.
Rational lcm_by_scan(const Rational& a, const Rational& b) {
  Rational big = a < b ? b : a;
  for (int n = 1; n <= 10000; ++n) {
    Rational x = big * Rational(n);
    if (a.divides(x) && b.divides(x)) return x;
  }
  throw std::runtime_error("lcm scan exhausted");
}

}  // namespace

TEST_CASE("rational normalization and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational::from_string("3/2") == Rational(3, 2));
  CHECK(Rational::from_string("-5") == Rational(-5));
  CHECK(Rational::from_string("6/4").str() == "3/2");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(7, 3).to_double() == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("rational lcm closed form") {
  CHECK(Rational::lcm(Rational(1), Rational(3, 2)) == Rational(3));
  CHECK(Rational::lcm(Rational(1), Rational(4, 3)) == Rational(4));
  CHECK(Rational::lcm(Rational(2, 3), Rational(1, 2)) == Rational(2));
  CHECK(Rational::lcm(Rational(3, 2), Rational(2)) == Rational(6));
  CHECK(Rational::lcm(Rational(1), Rational(2)) == Rational(2));
}

TEST_CASE("rational lcm matches multiple scan") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(1, 24);
  for (int it = 0; it < 500; ++it) {
    Rational a(d(rng), d(rng));
    Rational b(d(rng), d(rng));
    Rational l = Rational::lcm(a, b);
    CHECK(l == lcm_by_scan(a, b));
    CHECK(a.divides(l));
    CHECK(b.divides(l));
  }
}

TEST_CASE("divides") {
  CHECK(Rational(3, 2).divides(Rational(3)));
  CHECK(Rational(3, 2).divides(Rational(6)));
  CHECK_FALSE(Rational(3, 2).divides(Rational(2)));
  CHECK_FALSE(Rational(3).divides(Rational(3, 2)));
  CHECK(Rational(1, 3).divides(Rational(1)));
}

TEST_CASE("overflow is reported, not wrapped") {
  Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(rcjrp::checked_ipow(10, 40), std::overflow_error);
}
