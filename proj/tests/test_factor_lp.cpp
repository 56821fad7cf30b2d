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

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "rcjrp/factor_lp.hpp"
#include "rcjrp/gridmath.hpp"
#include "rcjrp/instance.hpp"
#include "rcjrp/relaxation.hpp"

using namespace rcjrp;

namespace {

Instance random_instance(std::mt19937_64& rng, int n, int d_count) {
  GeneratorSpec s;
  s.n = n;
  s.resources = d_count;
  s.seed = rng();
  return generate(s);
}

// Exhaustive scan of the adversary simplex for single-class models: the
// optimum of a max-min of linear functions is approachable on a fine grid.
double grid_search_rho(const LpModel& model, int steps) {
  REQUIRE(model.classes == 1);
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(model.constraint_rows()));
  for (int r = 0; r < model.constraint_rows(); ++r) {
    model.fill_row(r, rows[static_cast<std::size_t>(r)]);
  }
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const double z = static_cast<double>(i) / steps;
      const double x = static_cast<double>(j) / steps;
      const double y = 1.0 - z - x;
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& row : rows) {
        worst = std::min(worst, row[0] * z + row[1] * x + row[2] * y);
      }
      best = std::max(best, worst);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("model shape and coefficient ranges") {
  LpModel model = build_lp(16, 8);
  CHECK(model.constraint_rows() == 18);
  CHECK(model.adversary_columns() == 33);

  const double s2 = 1.0 + 1.0 / std::sqrt(2.0);
  CHECK(model.z_sum_k1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(model.z_sum_k2 == doctest::Approx(s2).epsilon(1e-14));

  for (int row = 0; row < model.constraint_rows(); ++row) {
    const double z = model.coefficient(row, 0);
    if (model.k_of(row) == 1) {
      CHECK(z >= 0.5 - 1e-12);
      CHECK(z <= 1.0 + 1e-12);
    } else {
      CHECK(z >= s2 / std::sqrt(2.0) - 1e-12);
      CHECK(z <= s2 + 1e-12);
    }
    for (int nu = 1; nu <= model.classes; ++nu) {
      const double x = model.coefficient(row, nu);
      const double y = model.coefficient(row, model.classes + nu);
      CHECK(std::isfinite(x));
      CHECK(x >= 0.5 - 1e-12);
      CHECK(x < 1.0 + 1e-12);
      CHECK(y > 1.0 - 1e-12);
      CHECK(y <= 2.0 + 1e-12);
      CHECK(x * y == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("single class model matches hand computed coefficients") {
  // Four constraint rows over (z, x_1, y_1); with the normalization and rho
  // itself this is the five-row, four-variable program.
  LpModel model = build_lp(1, 1);
  CHECK(model.constraint_rows() == 4);
  CHECK(model.adversary_columns() == 3);

  const double r2 = std::sqrt(2.0);
  const double s2 = 1.0 + 1.0 / r2;
  std::vector<std::vector<double>> expected = {
      {1.0, 0.5, 2.0},
      {0.5, 0.5, 2.0},
      {s2, 1.0 / r2, r2},
      {s2 / r2, 1.0 / r2, r2},
  };
  std::vector<double> row;
  for (int r = 0; r < 4; ++r) {
    model.fill_row(r, row);
    for (int c = 0; c < 3; ++c) {
      CHECK(row[static_cast<std::size_t>(c)] ==
            doctest::Approx(expected[static_cast<std::size_t>(r)]
                                    [static_cast<std::size_t>(c)])
                .epsilon(1e-13));
    }
  }
  CHECK(model.theta_of(0) == 0.0);
  CHECK(model.theta_of(1) == 1.0);
  CHECK(model.k_of(2) == 2);
}

TEST_CASE("grid points price the strictly next period") {
  // The last class sits on the unshifted grid, so its rounding at theta = 0
  // jumps a full step: t = 2 maps to 4 and the holding coefficient is 2.
  LpModel model = build_lp(8, 4);
  CHECK(model.coefficient(0, model.classes) == doctest::Approx(0.5));
  CHECK(model.coefficient(0, 2 * model.classes) == doctest::Approx(2.0));
}

TEST_CASE("coefficients agree with the strict rounding routine") {
  for (auto [classes, shifts] : {std::pair{7, 5}, std::pair{4, 4}}) {
    LpModel model = build_lp(classes, shifts);
    for (int row = 0; row < model.constraint_rows(); ++row) {
      GridConfig config = GridConfig::make(2, model.k_of(row), Rational(1),
                                           model.theta_of(row), 1.0);
      for (int nu = 1; nu <= classes; ++nu) {
        const double t = std::exp2(static_cast<double>(nu) / classes);
        // Nudge above t: when t sits exactly on the shifted grid the float
        // comparison inside round_up is one ulp from either neighbor, while
        // the model fixes the strictly next period.
        const double rounded = round_up(config, t * (1.0 + 1e-9)).value;
        CHECK(model.coefficient(row, classes + nu) ==
              doctest::Approx(rounded / t).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("tiny models solve to their closed form values") {
  // One class, theta grid {0}: the optimum mixes z and y on the crossing of
  // the two grid rows, at value 2*sqrt(2)/(2*sqrt(2)-1).
  LpModel flat = build_lp(1, 0);
  LpSolution flat_sol = solve_lp(flat);
  REQUIRE(flat_sol.status == LpStatus::kOptimal);
  const double flat_rho = 2.0 * std::sqrt(2.0) / (2.0 * std::sqrt(2.0) - 1.0);
  CHECK(flat_sol.rho == doctest::Approx(flat_rho).epsilon(1e-11));
  CHECK(check_lp_solution(flat, flat_sol).ok);

  // Adding theta = 1 rows caps the adversary at sqrt(2), all mass on y_1.
  LpModel two = build_lp(1, 1);
  LpSolution two_sol = solve_lp(two);
  REQUIRE(two_sol.status == LpStatus::kOptimal);
  CHECK(two_sol.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK(two_sol.y[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(check_lp_solution(two, two_sol).ok);

  for (const LpModel* model : {&flat, &two}) {
    const double scanned = grid_search_rho(*model, 800);
    const double solved = solve_lp(*model).rho;
    CHECK(scanned <= solved + 1e-9);
    CHECK(scanned >= solved - 5e-3);
  }
}

TEST_CASE("rho is at least one and shrinks as the shift grid refines") {
  double previous = std::numeric_limits<double>::infinity();
  for (int shifts : {1, 2, 4, 8}) {
    LpSolution sol = solve_lp(build_lp(16, shifts));
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.rho >= 1.0);
    CHECK(sol.rho <= previous + 1e-12);
    previous = sol.rho;
  }
  CHECK(previous < std::sqrt(2.0));
}

TEST_CASE("default resolution solves quickly with a tight certificate") {
  LpModel model = build_lp(200, 200);
  LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::kOptimal);
  // Recorded value for the 200/200 model.
  CHECK(sol.rho > 1.2510375);
  CHECK(sol.rho < 1.2510377);
  LpCheck check = check_lp_solution(model, sol);
  CHECK(check.ok);
  CHECK(check.certificate_max - check.witness_min <= 2e-9);
  CHECK(sol.activation_rounds >= 1);
  CHECK(sol.simplex_pivots >= 1);
}

TEST_CASE("discretization factor") {
  CHECK(final_guarantee(1.0, 1) == doctest::Approx(2.0));
  CHECK(final_guarantee(1.250677, 2000) < 1.2512);
  CHECK(final_guarantee(1.250677, 2000) ==
        doctest::Approx(1.250677 * std::exp2(1.0 / 2000.0)).epsilon(1e-15));
}

TEST_CASE("tilde rounding lands on the discrete grid just above") {
  std::mt19937_64 rng(414243);
  for (int trial = 0; trial < 6; ++trial) {
    Instance ins = random_instance(rng, 8, trial % 3);
    RelaxedSolution sol = solve_relaxation(ins);
    REQUIRE(sol.converged);

    const int classes = 200;
    TildePolicy tilde = build_tilde_policy(sol, ins, classes, 0.37);
    const double step = std::exp2(1.0 / classes);
    CHECK(tilde.t_min >= sol.t_min * (1.0 - 1e-9));
    CHECK(tilde.t_min <= sol.t_min * step * (1.0 + 1e-9));
    for (std::size_t i = 0; i < tilde.periods.size(); ++i) {
      const double ratio = tilde.periods[i] / sol.periods[i];
      CHECK(ratio >= 1.0 - 1e-9);
      CHECK(ratio <= step * (1.0 + 1e-9));
      const double exponent = classes * std::log2(tilde.periods[i]);
      CHECK(std::abs(exponent - std::round(exponent)) < 1e-6);
    }
    CHECK(tilde.objective <= step * sol.objective * (1.0 + 1e-9));
    CHECK(tilde.objective >= sol.objective * (1.0 - 1e-9));
    CHECK(tilde.choice.cost.total > 0.0);
  }
}

TEST_CASE("searched shift is no worse than any fixed shift") {
  std::mt19937_64 rng(515253);
  for (int trial = 0; trial < 5; ++trial) {
    Instance ins = random_instance(rng, 10, trial % 2 == 0 ? 2 : 0);
    RelaxedSolution sol = solve_relaxation(ins);
    REQUIRE(sol.converged);

    TildePolicy searched = build_tilde_policy(sol, ins, 200, std::nullopt);
    for (double theta : {0.0, 0.2, 0.45, 0.7, 0.9, 1.0}) {
      TildePolicy fixed = build_tilde_policy(sol, ins, 200, theta);
      CHECK(searched.choice.cost.total <=
            fixed.choice.cost.total * (1.0 + 1e-12));
    }
    const double tol = 1e-6 + 100.0 * sol.kkt_residual;
    CHECK(searched.choice.cost.ratio <= 1.2512 + tol);
  }
}
