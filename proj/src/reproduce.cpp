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

#include "rcjrp/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rcjrp/instance.hpp"
#include "rcjrp/policy.hpp"
#include "rcjrp/relaxation.hpp"
#include "rcjrp/util.hpp"

namespace rcjrp {

namespace {

constexpr int kMaxN = 50;
constexpr int kMaxResources = 5;

InstanceOutcome run_one(std::uint64_t instance_seed, std::uint64_t theta_seed,
                        int theta_samples) {
  std::mt19937_64 sizing(instance_seed);
  GeneratorSpec spec;
  spec.n = 1 + static_cast<int>(sizing() % kMaxN);
  spec.resources = static_cast<int>(sizing() % (kMaxResources + 1));
  spec.seed = sizing();
  Instance ins = generate(spec);

  RelaxedSolution sol = solve_relaxation(ins);
  if (!sol.converged) {
    throw std::runtime_error("relaxation did not converge for seed " +
                             std::to_string(instance_seed));
  }

  InstanceOutcome out;
  out.seed = instance_seed;
  out.n = ins.n();
  out.resources = ins.resources();
  out.opt = sol.objective;
  out.kkt_residual = sol.kkt_residual;
  out.slack = 1e-6 + 100.0 * sol.kkt_residual;

  const GridConfig c22 =
      GridConfig::make(2, 2, Rational(1), 0.0, sol.t_min);
  const GridConfig c23 =
      GridConfig::make(2, 3, Rational(1), 0.0, sol.t_min);
  out.static_22 = evaluate(build_policy(sol, c22), ins, sol.objective).ratio;
  out.static_pair_certificate =
      best_of_two(sol, ins, c22, c23).bound / sol.objective;

  std::mt19937_64 theta_rng(theta_seed);
  double sum_single = 0.0, sum_pair = 0.0, sum_inter = 0.0;
  for (int s = 0; s < theta_samples; ++s) {
    const double theta = 1.0 - uniform_unit(theta_rng);
    sum_single +=
        evaluate(build_policy(
                     sol, GridConfig::make(3, 2, Rational(1), theta, sol.t_min)),
                 ins, sol.objective)
            .ratio;
    sum_pair += best_of_two(
                    sol, ins,
                    GridConfig::make(2, 1, Rational(1), theta, sol.t_min),
                    GridConfig::make(2, 2, Rational(1), theta, sol.t_min))
                    .cost.ratio;
    sum_inter +=
        evaluate(build_policy(sol, GridConfig::make(2, 1, Rational(3, 2), theta,
                                                    sol.t_min)),
                 ins, sol.objective)
            .ratio;
  }
  out.shifted_32_avg = sum_single / theta_samples;
  out.shifted_pair_avg = sum_pair / theta_samples;
  out.interleaved_avg = sum_inter / theta_samples;

  DerandomizeResult derand = derandomize(
      sol, ins, GridConfig::make(2, 1, Rational(3, 2), std::nullopt, sol.t_min));
  out.interleaved_derand = derand.cost.ratio;
  out.derand_theta = derand.theta_star;
  return out;
}

FamilySummary summarize(const std::string& family, double bound,
                        const std::vector<InstanceOutcome>& rows,
                        double InstanceOutcome::*field) {
  FamilySummary s;
  s.family = family;
  s.bound = bound;
  for (const InstanceOutcome& row : rows) {
    const double ratio = row.*field;
    s.max_ratio = std::max(s.max_ratio, ratio);
    s.mean_ratio += ratio;
    if (ratio > bound + row.slack) ++s.violations;
  }
  if (!rows.empty()) s.mean_ratio /= static_cast<double>(rows.size());
  s.pass = s.violations == 0;
  return s;
}

}  // namespace

std::vector<MultiplierRow> reference_multiplier_table() {
  auto row = [](const char* family, int m, int k, Rational alpha,
                CostMultipliers values) {
    return MultiplierRow{family, m, k, alpha, values};
  };
  const auto cfg = [](int m, int k, Rational alpha,
                      std::optional<double> theta) {
    return GridConfig::make(m, k, alpha, theta, 1.0);
  };
  return {
      row("static", 2, 2, Rational(1),
          multipliers_static(cfg(2, 2, Rational(1), 0.0))),
      row("static", 2, 3, Rational(1),
          multipliers_static(cfg(2, 3, Rational(1), 0.0))),
      row("shifted", 2, 1, Rational(1),
          multipliers_shifted(cfg(2, 1, Rational(1), std::nullopt))),
      row("shifted", 2, 2, Rational(1),
          multipliers_shifted(cfg(2, 2, Rational(1), std::nullopt))),
      row("shifted", 3, 2, Rational(1),
          multipliers_shifted(cfg(3, 2, Rational(1), std::nullopt))),
      row("interleaved", 2, 1, Rational(3, 2),
          multipliers_interleaved(cfg(2, 1, Rational(3, 2), std::nullopt))),
  };
}

ReproduceReport run_reproduce(int seed_count, std::uint64_t root_seed,
                              int theta_samples) {
  if (seed_count < 0) {
    throw std::invalid_argument("run_reproduce: seed count must be nonnegative");
  }
  if (theta_samples < 1) {
    throw std::invalid_argument("run_reproduce: need at least one shift sample");
  }

  ReproduceReport report;
  report.theta_samples = theta_samples;
  std::uint64_t instance_state = derive_seed(root_seed, "instances");
  std::uint64_t theta_state = derive_seed(root_seed, "shift-samples");
  report.rows.reserve(static_cast<std::size_t>(seed_count));
  for (int i = 0; i < seed_count; ++i) {
    const std::uint64_t instance_seed = splitmix64(instance_state);
    const std::uint64_t theta_seed = splitmix64(theta_state);
    report.rows.push_back(run_one(instance_seed, theta_seed, theta_samples));
  }

  const double sqrt2 = std::sqrt(2.0);
  const double shifted32 = 2.0 * (std::sqrt(3.0) - 1.0) / std::log(3.0);
  const double inter = 5.0 / (6.0 * std::log(2.0));
  report.families = {
      summarize("static (2,2)", sqrt2, report.rows, &InstanceOutcome::static_22),
      summarize("static best-of-two certificate", 1.3776, report.rows,
                &InstanceOutcome::static_pair_certificate),
      summarize("shifted (3,2) averaged", shifted32, report.rows,
                &InstanceOutcome::shifted_32_avg),
      summarize("shifted best-of-two averaged", 1.2585, report.rows,
                &InstanceOutcome::shifted_pair_avg),
      summarize("interleaved (2,1,3/2) derandomized", inter, report.rows,
                &InstanceOutcome::interleaved_derand),
  };
  return report;
}

}  // namespace rcjrp
