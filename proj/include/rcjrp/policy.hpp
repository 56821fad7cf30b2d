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

#include <string>
#include <vector>

#include "rcjrp/gridmath.hpp"
#include "rcjrp/instance.hpp"
#include "rcjrp/relaxation.hpp"

namespace rcjrp {

/// Periodic ordering policy: one interval per commodity, every interval a
/// point of a single grid. Intervals are kept both as doubles and as exact
/// grid indices so joint-cost accounting can stay exact.
struct Policy {
  GridConfig config;
  std::vector<double> intervals;
  std::vector<ScaledPower> indices;
  std::string provenance;
};

struct CostBreakdown {
  double joint = 0.0;
  double individual_ordering = 0.0;
  double holding = 0.0;
  double total = 0.0;
  double ratio = 0.0;
};

/// Round each period strictly up onto the grid. The config must carry a
/// concrete theta. Feasibility on every resource row is inherited from the
/// input periods because rounding only shrinks order frequencies.
Policy build_policy(const std::vector<double>& periods, const GridConfig& config,
                    std::string provenance = "");

/// Convenience wrapper rounding a relaxation solution; the config anchor must
/// equal the solution floor.
Policy build_policy(const RelaxedSolution& solution, const GridConfig& config,
                    std::string provenance = "");

/// Long-run joint order density of the policy, computed exactly: distinct
/// intervals are reduced by deleting any interval that is an integer multiple
/// of another (its epochs are a subset of the other's), then the survivors go
/// through inclusion-exclusion over pairwise least common multiples.
double exact_joint_density(const Policy& policy);

/// Exact long-run average cost of the policy and its ratio to opt_p.
CostBreakdown evaluate(const Policy& policy, const Instance& instance,
                       double opt_p);

/// Closed-form upper bound on the policy family's cost for this solution:
/// v_joint * K0 / T_min + v_order * sum K_i / T_i + v_hold * sum H_i T_i,
/// with the multipliers of the family the config describes. A concrete
/// nonzero shift (or a concrete shift on an interleaved grid) is treated as
/// a sample of the randomized family, so the certificate is computed from
/// the expectation multipliers.
double bound_certificate(const RelaxedSolution& solution,
                         const Instance& instance, const GridConfig& config);

struct PolicyChoice {
  Policy policy;
  CostBreakdown cost;
  double bound = 0.0;  // min of the two family bound certificates
};

/// Build both policies (same anchor, and for randomized families the caller
/// passes the same drawn shift to both configs), evaluate each exactly, and
/// return the cheaper one together with the better bound certificate.
PolicyChoice best_of_two(const RelaxedSolution& solution,
                         const Instance& instance, const GridConfig& config_a,
                         const GridConfig& config_b);

struct DerandomizeResult {
  double theta_star = 0.0;
  Policy policy;
  CostBreakdown cost;
  double bound_theta = 0.0;  // shift minimizing the closed-form upper bound
  double bound_value = 0.0;
};

/// Pick the shift minimizing the exact policy cost. Rounded intervals change
/// only at shifts where a grid point crosses some period, so [0, 1] splits
/// into finitely many pieces on which cost is a * m^(-theta/k) + b *
/// m^(theta/k); each piece is minimized in closed form and candidates are
/// re-evaluated exactly. The minimizer of the closed-form upper bound over
/// the same pieces is reported alongside.
DerandomizeResult derandomize(const RelaxedSolution& solution,
                              const Instance& instance,
                              const GridConfig& config);

}  // namespace rcjrp
