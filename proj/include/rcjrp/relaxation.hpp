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

#ifndef RCJRP_RELAXATION_HPP_
#define RCJRP_RELAXATION_HPP_

#include <vector>

#include "rcjrp/instance.hpp"

namespace rcjrp {

// Optimal point of the continuous relaxation: minimize
//   K0 / T_min + sum_i (K_i / T_i + H_i T_i)
// over T_i >= T_min > 0 with sum_i alpha_di / T_i <= 1 for every resource.
struct RelaxedSolution {
  double t_min = 0.0;
  std::vector<double> periods;
  double objective = 0.0;
  double kkt_residual = 0.0;
  std::vector<int> active_resources;
  bool converged = false;
  int iterations = 0;
};

// Objective of the relaxation at an arbitrary point.
double relaxation_objective(const Instance& instance, double t_min,
                            const std::vector<double>& periods);

// Interior-point solve in the frequency formulation; tol bounds the
// certified first-order residual of the returned point.
RelaxedSolution solve_relaxation(const Instance& instance, double tol = 1e-9);

struct KktReport {
  double stationarity = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;
  // Resources the solution claims are binding but whose slack is not small.
  std::vector<int> misreported_resources;
  std::vector<double> commodity_duals;  // lambda_i for T_i >= T_min
  std::vector<double> resource_duals;   // mu_d for the capacity rows
  double max_residual() const;
};

// Recovers multipliers from the point itself and reports first-order
// residuals; independent of how the solution was produced.
KktReport kkt_check(const Instance& instance, const RelaxedSolution& solution);

}  // namespace rcjrp

#endif  // RCJRP_RELAXATION_HPP_
