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

#ifndef RCJRP_REPRODUCE_HPP_
#define RCJRP_REPRODUCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rcjrp/gridmath.hpp"

namespace rcjrp {

struct MultiplierRow {
  std::string family;
  int m = 0;
  int k = 0;
  Rational alpha{1};
  CostMultipliers values;
};

// The six reference configurations whose cost multipliers have closed forms:
// static (2,2) and (2,3), shifted (2,1), (2,2), (3,2), interleaved (2,1,3/2).
std::vector<MultiplierRow> reference_multiplier_table();

// One random instance pushed through every policy family. Ratios are exact
// long-run cost over the relaxation optimum; averaged entries are sample
// means over shifts drawn uniformly from (0, 1].
struct InstanceOutcome {
  std::uint64_t seed = 0;
  int n = 0;
  int resources = 0;
  double opt = 0.0;
  double kkt_residual = 0.0;
  double slack = 0.0;  // ratio tolerance: 1e-6 plus propagated solver residual
  double static_22 = 0.0;
  double static_pair_certificate = 0.0;  // min of the two bound certs / opt
  double shifted_32_avg = 0.0;
  double shifted_pair_avg = 0.0;
  double interleaved_derand = 0.0;
  double interleaved_avg = 0.0;  // same family and shift draws, for dominance
  double derand_theta = 0.0;
};

struct FamilySummary {
  std::string family;
  double bound = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int violations = 0;  // instances with ratio above bound + slack
  bool pass = true;
};

struct ReproduceReport {
  std::vector<InstanceOutcome> rows;
  std::vector<FamilySummary> families;
  int theta_samples = 0;
};

// Runs seed_count random instances (n up to 50, up to 5 resources) through
// the full pipeline: relaxation, static rounding, best-of-two certificates,
// shift-averaged families, and derandomized interleaved rounding. All
// randomness derives from root_seed; results are deterministic in
// (seed_count, root_seed, theta_samples).
ReproduceReport run_reproduce(int seed_count, std::uint64_t root_seed,
                              int theta_samples = 1000);

}  // namespace rcjrp

#endif  // RCJRP_REPRODUCE_HPP_
