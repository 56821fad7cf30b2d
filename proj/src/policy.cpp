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

#include "rcjrp/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace rcjrp {

namespace {

std::string default_provenance(const GridConfig& config) {
  if (config.interleaved()) return "interleaved";
  if (config.theta.has_value() && *config.theta == 0.0) return "static";
  return "shifted";
}

double fractional_part(double x) { return x - std::floor(x); }

}  // namespace

Policy build_policy(const std::vector<double>& periods,
                    const GridConfig& config, std::string provenance) {
  if (!config.theta.has_value()) {
    throw std::invalid_argument("build_policy: config needs a concrete shift");
  }
  Policy policy;
  policy.config = config;
  policy.provenance =
      provenance.empty() ? default_provenance(config) : std::move(provenance);
  policy.intervals.reserve(periods.size());
  policy.indices.reserve(periods.size());
  for (double t : periods) {
    GridPoint g = round_up(config, t);
    policy.intervals.push_back(g.value);
    policy.indices.push_back(g.index);
  }
  return policy;
}

Policy build_policy(const RelaxedSolution& solution, const GridConfig& config,
                    std::string provenance) {
  if (config.anchor != solution.t_min) {
    throw std::invalid_argument(
        "build_policy: config anchor must equal the solution floor");
  }
  return build_policy(solution.periods, config, std::move(provenance));
}

double exact_joint_density(const Policy& policy) {
  if (policy.intervals.empty()) return 0.0;
  std::vector<ScaledPower> distinct;
  for (const ScaledPower& s : policy.indices) {
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) {
      distinct.push_back(s);
    }
  }
  // An interval that is an integer multiple of another orders on a subset of
  // the other's epochs and contributes nothing to the union.
  std::vector<ScaledPower> survivors;
  for (const ScaledPower& u : distinct) {
    bool dominated = false;
    for (const ScaledPower& v : distinct) {
      if (u == v || u.p != v.p) continue;
      if (v.q.divides(u.q)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) survivors.push_back(u);
  }
  MultiplierSet set(policy.config.base);
  for (const ScaledPower& s : survivors) set.add(s);
  double scale =
      std::pow(policy.config.root(), *policy.config.theta) *
      policy.config.anchor;
  return inclusion_exclusion_sum(set).to_double() / scale;
}

CostBreakdown evaluate(const Policy& policy, const Instance& instance,
                       double opt_p) {
  if (static_cast<int>(policy.intervals.size()) != instance.n()) {
    throw std::invalid_argument("evaluate: policy and instance sizes differ");
  }
  CostBreakdown cost;
  cost.joint = instance.joint_cost * exact_joint_density(policy);
  for (int i = 0; i < instance.n(); ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    double t = policy.intervals[static_cast<std::size_t>(i)];
    cost.individual_ordering += c.order_cost / t;
    cost.holding += c.holding_cost * t;
  }
  cost.total = cost.joint + cost.individual_ordering + cost.holding;
  cost.ratio = cost.total / opt_p;
  return cost;
}

double bound_certificate(const RelaxedSolution& solution,
                         const Instance& instance, const GridConfig& config) {
  GridConfig family = config;
  if (family.theta.has_value() &&
      (*family.theta != 0.0 || family.interleaved())) {
    family.theta.reset();
  }
  CostMultipliers v = multipliers(family);
  double bound = v.v_joint * instance.joint_cost / solution.t_min;
  for (int i = 0; i < instance.n(); ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    double t = solution.periods[static_cast<std::size_t>(i)];
    bound += v.v_order * c.order_cost / t + v.v_hold * c.holding_cost * t;
  }
  return bound;
}

PolicyChoice best_of_two(const RelaxedSolution& solution,
                         const Instance& instance, const GridConfig& config_a,
                         const GridConfig& config_b) {
  if (config_a.anchor != config_b.anchor) {
    throw std::invalid_argument("best_of_two: configs must share the anchor");
  }
  Policy pol_a = build_policy(solution, config_a, "best-of-two");
  Policy pol_b = build_policy(solution, config_b, "best-of-two");
  CostBreakdown cost_a = evaluate(pol_a, instance, solution.objective);
  CostBreakdown cost_b = evaluate(pol_b, instance, solution.objective);
  double cert = std::min(bound_certificate(solution, instance, config_a),
                         bound_certificate(solution, instance, config_b));
  if (cost_b.total < cost_a.total) {
    return {std::move(pol_b), cost_b, cert};
  }
  return {std::move(pol_a), cost_a, cert};
}

DerandomizeResult derandomize(const RelaxedSolution& solution,
                              const Instance& instance,
                              const GridConfig& config) {
  if (config.theta.has_value()) {
    throw std::invalid_argument(
        "derandomize: config must describe the randomized family");
  }
  if (config.anchor != solution.t_min) {
    throw std::invalid_argument(
        "derandomize: config anchor must equal the solution floor");
  }
  const double b_root = config.root();
  const double log_b = std::log(b_root);
  const double beta = config.interleaved() ? config.beta() : 0.0;

  // Rounded intervals change exactly at the shifts placing a grid point on
  // some period, so these fractional positions cut [0, 1] into pieces with a
  // fixed grid assignment.
  std::vector<double> cuts{0.0, 1.0};
  for (double t : solution.periods) {
    double pos = std::log(t / config.anchor) / log_b;
    cuts.push_back(fractional_part(pos));
    if (config.interleaved()) cuts.push_back(fractional_part(pos - beta));
  }
  if (config.interleaved()) cuts.push_back(1.0 - beta);
  for (double& c : cuts) c = std::clamp(c, 0.0, 1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return y - x <= 1e-12; }),
             cuts.end());
  if (cuts.back() < 1.0) cuts.push_back(1.0);

  DerandomizeResult result;
  bool have_exact = false;
  bool have_bound = false;
  auto consider = [&](double theta) {
    Policy pol = build_policy(solution, config.with_theta(theta),
                              "derandomized");
    CostBreakdown cost = evaluate(pol, instance, solution.objective);
    double bound = instance.joint_cost *
                       density_interleaved(config.with_theta(theta)) +
                   cost.individual_ordering + cost.holding;
    if (!have_bound || bound < result.bound_value) {
      have_bound = true;
      result.bound_theta = theta;
      result.bound_value = bound;
    }
    if (!have_exact || cost.total < result.cost.total) {
      have_exact = true;
      result.theta_star = theta;
      result.policy = std::move(pol);
      result.cost = cost;
    }
  };

  consider(0.0);  // the shift where the anchor itself sits on the grid
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double lo = cuts[j];
    const double hi = cuts[j + 1];
    // Assignment on the half-open piece (lo, hi] matches the right endpoint:
    // a grid point landing on a period at the cut is excluded by strictness.
    Policy pol_hi = build_policy(solution, config.with_theta(hi),
                                 "derandomized");
    CostBreakdown cost_hi = evaluate(pol_hi, instance, solution.objective);
    consider(hi);
    consider(lo + 1e-9 * (hi - lo));

    // On the piece, cost is a * B^-theta + b * B^theta; the interior
    // stationary point of each variant is a candidate when it falls inside.
    double shrink_exact = (cost_hi.joint + cost_hi.individual_ordering) *
                          std::pow(b_root, hi);
    double shrink_bound =
        (instance.joint_cost * density_interleaved(config.with_theta(hi)) +
         cost_hi.individual_ordering) *
        std::pow(b_root, hi);
    double grow = cost_hi.holding * std::pow(b_root, -hi);
    for (double shrink : {shrink_exact, shrink_bound}) {
      if (shrink <= 0.0 || grow <= 0.0) continue;
      double theta_hat = std::log(shrink / grow) / (2.0 * log_b);
      if (theta_hat > lo && theta_hat < hi) consider(theta_hat);
    }
  }
  return result;
}

}  // namespace rcjrp
