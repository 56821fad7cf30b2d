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

#ifndef RCJRP_INSTANCE_HPP_
#define RCJRP_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace rcjrp {

struct Commodity {
  double order_cost = 0.0;    // K_i, may be zero
  double holding_cost = 0.0;  // H_i, strictly positive
};

// Joint replenishment instance with resource rows normalized to capacity 1.
struct Instance {
  double joint_cost = 0.0;  // K0
  std::vector<Commodity> commodities;
  // resource_use[d][i]: units of resource d consumed per order of commodity i.
  std::vector<std::vector<double>> resource_use;
  // Pre-normalization capacities when the input carried raw rows; empty
  // otherwise. Kept so written files preserve provenance of the scaling.
  std::vector<double> capacities_raw;

  int n() const { return static_cast<int>(commodities.size()); }
  int resources() const { return static_cast<int>(resource_use.size()); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Lists every violated structural invariant; empty report means well-formed.
ValidationReport validate(const Instance& instance);

struct GeneratorSpec {
  int n = 1;
  int resources = 0;
  std::uint64_t seed = 0;
  double joint_cost_lo = 0.5, joint_cost_hi = 50.0;
  double order_cost_lo = 0.05, order_cost_hi = 20.0;
  double holding_cost_lo = 0.1, holding_cost_hi = 10.0;
  double zero_order_cost_fraction = 0.1;
  double alpha_density = 0.4;
  double alpha_lo = 0.01, alpha_hi = 1.0;
};

// Deterministic in (spec, seed); always returns a well-formed instance.
Instance generate(const GeneratorSpec& spec);

// Serialization to the documented structured-text format. Reals are decimal
// strings with shortest round-trip encoding, so read(write(x)) == x exactly.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
void write_instance(const Instance& instance, const std::string& path);
Instance read_instance(const std::string& path);

}  // namespace rcjrp

#endif  // RCJRP_INSTANCE_HPP_
