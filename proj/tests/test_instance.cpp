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

#include <cstdio>
#include <stdexcept>

#include "rcjrp/instance.hpp"
#include "rcjrp/util.hpp"

using namespace rcjrp;

namespace {

Instance small_valid() {
  Instance x;
  x.joint_cost = 2.5;
  x.commodities = {{1.0, 0.5}, {0.0, 2.0}, {3.0, 1.0}};
  x.resource_use = {{0.1, 0.0, 0.2}, {0.0, 0.3, 0.0}};
  return x;
}

}  // namespace

TEST_CASE("validate reports structural violations") {
  CHECK(validate(small_valid()).ok());

  Instance x = small_valid();
  x.commodities[1].holding_cost = 0.0;
  auto r = validate(x);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].find("H_2") != std::string::npos);

  x = small_valid();
  x.resource_use[1] = {0.0, 0.0, 0.0};
  r = validate(x);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].find("vacuous") != std::string::npos);

  x = small_valid();
  x.joint_cost = -1.0;
  CHECK_FALSE(validate(x).ok());

  x = small_valid();
  x.resource_use[0][2] = -0.5;
  CHECK_FALSE(validate(x).ok());

  x = small_valid();
  x.commodities.clear();
  x.resource_use.clear();
  CHECK_FALSE(validate(x).ok());
}

TEST_CASE("generator determinism and shape") {
  GeneratorSpec s;
  s.n = 50;
  s.resources = 5;
  s.seed = 1;
  Instance a = generate(s);
  Instance b = generate(s);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK(a.n() == 50);
  CHECK(a.resources() == 5);
  CHECK(validate(a).ok());

  s.seed = 2;
  Instance c = generate(s);
  CHECK(instance_to_json(a) != instance_to_json(c));

  GeneratorSpec tiny;
  tiny.n = 1;
  tiny.resources = 0;
  tiny.seed = 7;
  Instance t = generate(tiny);
  CHECK(t.n() == 1);
  CHECK(t.resources() == 0);
  CHECK(validate(t).ok());

  GeneratorSpec bad;
  bad.n = 0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = GeneratorSpec{};
  bad.holding_cost_lo = 5.0;
  bad.holding_cost_hi = 1.0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("json round trip is exact") {
  GeneratorSpec s;
  s.n = 23;
  s.resources = 3;
  s.seed = 99;
  Instance a = generate(s);
  std::string text = instance_to_json(a);
  Instance b = instance_from_json(text);
  CHECK(instance_to_json(b) == text);
  REQUIRE(b.n() == a.n());
  for (int i = 0; i < a.n(); ++i) {
    CHECK(a.commodities[i].order_cost == b.commodities[i].order_cost);
    CHECK(a.commodities[i].holding_cost == b.commodities[i].holding_cost);
  }
  for (int d = 0; d < a.resources(); ++d) {
    for (int i = 0; i < a.n(); ++i) {
      CHECK(a.resource_use[d][i] == b.resource_use[d][i]);
    }
  }

  const char* path = "roundtrip_test_instance.json";
  write_instance(a, path);
  Instance c = read_instance(path);
  CHECK(instance_to_json(c) == text);
  std::remove(path);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(instance_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      instance_from_json(
          R"({"n":1,"D":0,"K0":true,"commodities":[{"K":"1","H":"1"}],"alpha":[]})"),
      doctest::Contains("K0"), std::invalid_argument);
  // Negative alpha entries are invariant violations, caught at read time.
  CHECK_THROWS_WITH_AS(
      instance_from_json(
          R"({"n":1,"D":1,"K0":"1","commodities":[{"K":"1","H":"1"}],"alpha":[["-0.5"]]})"),
      doctest::Contains("nonnegative"), std::invalid_argument);
  // Wrong row length.
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"n":2,"D":1,"K0":"1","commodities":[{"K":"1","H":"1"},{"K":"1","H":"1"}],"alpha":[["0.5"]]})"),
      std::invalid_argument);
}

TEST_CASE("raw capacities are normalized at read time") {
  std::string text = R"({
    "n": 2, "D": 1, "K0": "4",
    "commodities": [{"K": "1", "H": "1"}, {"K": "2", "H": "0.5"}],
    "alpha": [["1", "3"]],
    "capacities": ["4"]
  })";
  Instance x = instance_from_json(text);
  CHECK(x.resource_use[0][0] == 0.25);
  CHECK(x.resource_use[0][1] == 0.75);
  REQUIRE(x.capacities_raw.size() == 1);
  CHECK(x.capacities_raw[0] == 4.0);
  // The normalization survives a write/read cycle via metadata.
  Instance y = instance_from_json(instance_to_json(x));
  CHECK(y.resource_use[0][1] == 0.75);
  CHECK(y.capacities_raw[0] == 4.0);
}

TEST_CASE("number formatting round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, 2.5e17}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("12x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}
