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

#ifndef RCJRP_SIMULATE_HPP_
#define RCJRP_SIMULATE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "rcjrp/gridmath.hpp"

namespace rcjrp {

// Number of distinct order epochs in [0, delta] for the union of the
// arithmetic progressions {0, g, 2g, ...} with periods g_u = value(u) * scale.
// Duplicate epochs across progressions are resolved exactly: two epochs
// coincide iff their multipliers share a residue class and the rational
// parts n * q agree. Epoch 0 is counted once.
long long count_joint_epochs(const GridBase& base,
                             const std::vector<ScaledPower>& multipliers,
                             double scale, double delta);

long long count_joint_epochs(const DensitySupport& support,
                             const GridBase& base, double delta);

// Same count for plain floating-point periods. Epochs closer than
// rel_tol relative to each other are merged, which resolves products that
// agree as reals but differ in the last bits.
long long count_joint_epochs(const std::vector<double>& periods, double delta,
                             double rel_tol = 1e-9);

struct MonteCarloStats {
  double mean = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};

// Averages fn(theta) over independent draws of theta uniform on (0, 1].
MonteCarloStats monte_carlo_theta(const std::function<double(double)>& fn,
                                  long long samples, std::uint64_t seed);

}  // namespace rcjrp

#endif  // RCJRP_SIMULATE_HPP_
