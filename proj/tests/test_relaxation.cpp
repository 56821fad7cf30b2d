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
#include <random>
#include <stdexcept>

#include "rcjrp/instance.hpp"
#include "rcjrp/relaxation.hpp"
#include "rcjrp/util.hpp"

using namespace rcjrp;

namespace {

Instance make_instance(double k0, std::vector<Commodity> coms,
                       std::vector<std::vector<double>> alpha = {}) {
  Instance x;
  x.joint_cost = k0;
  x.commodities = std::move(coms);
  x.resource_use = std::move(alpha);
  return x;
}

// One-dimensional golden-section oracle for the no-resource case, where
// the problem reduces to a convex search over the common floor.
double golden_floor_search(const Instance& ins) {
  auto g = [&](double t_min) {
    double v = ins.joint_cost / t_min;
    for (const Commodity& c : ins.commodities) {
      double t = std::max(std::sqrt(c.order_cost / c.holding_cost), t_min);
      v += c.order_cost / t + c.holding_cost * t;
    }
    return v;
  };
  double lo = 1e-5, hi = 1e5;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double v1 = g(x1), v2 = g(x2);
  for (int it = 0; it < 200; ++it) {
    if (v1 < v2) {
      hi = x2; x2 = x1; v2 = v1;
      x1 = hi - phi * (hi - lo); v1 = g(x1);
    } else {
      lo = x1; x1 = x2; v1 = v2;
      x2 = lo + phi * (hi - lo); v2 = g(x2);
    }
  }
  return g(0.5 * (lo + hi));
}

Instance random_instance(std::mt19937_64& rng, int n, int d_count) {
  GeneratorSpec s;
  s.n = n;
  s.resources = d_count;
  s.seed = rng();
  return generate(s);
}

}  // namespace

TEST_CASE("single commodity closed form") {
  Instance ins = make_instance(1.0, {{1.0, 1.0}});
  RelaxedSolution sol = solve_relaxation(ins);
  CHECK(sol.converged);
  CHECK(sol.t_min == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(sol.periods[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(sol.objective == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sol.kkt_residual < 1e-10);
}

TEST_CASE("single commodity with a binding resource") {
  Instance ins = make_instance(1.0, {{1.0, 1.0}}, {{2.0}});
  RelaxedSolution sol = solve_relaxation(ins);
  CHECK(sol.converged);
  CHECK(sol.periods[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-9));
  REQUIRE(sol.active_resources.size() == 1);
  CHECK(sol.active_resources[0] == 0);
  CHECK(sol.kkt_residual <= 1e-9);
}

TEST_CASE("symmetric commodities share the floor") {
  Instance ins = make_instance(1.0, {{1.0, 1.0}, {1.0, 1.0}});
  RelaxedSolution sol = solve_relaxation(ins);
  CHECK(sol.periods[0] == doctest::Approx(sol.periods[1]).epsilon(1e-12));
  CHECK(sol.periods[0] == doctest::Approx(sol.t_min).epsilon(1e-12));
  // Merged EOQ: sqrt((K0 + 2K)/(2H)).
  CHECK(sol.t_min == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
}

TEST_CASE("zero individual order costs are handled") {
  Instance ins = make_instance(4.0, {{0.0, 1.0}, {0.0, 3.0}});
  RelaxedSolution sol = solve_relaxation(ins);
  CHECK(sol.converged);
  CHECK(sol.t_min == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.objective == doctest::Approx(golden_floor_search(ins)).epsilon(1e-10));
}

TEST_CASE("floor search matches golden-section oracle") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 40; ++it) {
    Instance ins = random_instance(rng, 1 + static_cast<int>(rng() % 12), 0);
    RelaxedSolution sol = solve_relaxation(ins);
    CHECK(sol.converged);
    CHECK(sol.kkt_residual <= 1e-9);
    CHECK(sol.objective ==
          doctest::Approx(golden_floor_search(ins)).epsilon(1e-9));
  }
}

TEST_CASE("interior point matches the exact path when resources are slack") {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 10; ++it) {
    Instance ins = random_instance(rng, 1 + static_cast<int>(rng() % 8), 0);
    RelaxedSolution exact = solve_relaxation(ins);
    Instance with_slack = ins;
    // A row this small never binds: periods stay around unit scale.
    with_slack.resource_use.push_back(
        std::vector<double>(static_cast<std::size_t>(ins.n()), 1e-7));
    RelaxedSolution ip = solve_relaxation(with_slack);
    CHECK(ip.converged);
    CHECK(ip.active_resources.empty());
    CHECK(ip.objective == doctest::Approx(exact.objective).epsilon(1e-7));
  }
}

TEST_CASE("random constrained instances reach the tolerance") {
  std::mt19937_64 rng(107);
  for (int it = 0; it < 25; ++it) {
    Instance ins = random_instance(rng, 1 + static_cast<int>(rng() % 12),
                                   1 + static_cast<int>(rng() % 3));
    RelaxedSolution sol = solve_relaxation(ins);
    CHECK(sol.converged);
    CHECK(sol.kkt_residual <= 1e-9);
    // Strict interior feasibility of the returned point.
    for (double t : sol.periods) CHECK(t > sol.t_min);
    for (int d = 0; d < ins.resources(); ++d) {
      double used = 0.0;
      for (int i = 0; i < ins.n(); ++i) {
        used += ins.resource_use[d][i] / sol.periods[i];
      }
      CHECK(used <= 1.0);
    }
  }
}

TEST_CASE("objective dominates random feasible points") {
  std::mt19937_64 rng(109);
  for (int rep = 0; rep < 8; ++rep) {
    Instance ins = random_instance(rng, 2 + static_cast<int>(rng() % 10),
                                   static_cast<int>(rng() % 3));
    RelaxedSolution sol = solve_relaxation(ins);
    for (int s = 0; s < 100; ++s) {
      std::vector<double> f(static_cast<std::size_t>(ins.n()));
      for (double& v : f) {
        v = std::exp((uniform_unit(rng) - 0.5) * 4.0);
      }
      double load = 1.0;
      for (int d = 0; d < ins.resources(); ++d) {
        double row = 0.0;
        for (int i = 0; i < ins.n(); ++i) row += ins.resource_use[d][i] * f[i];
        load = std::max(load, row);
      }
      double shrink = load * (1.0 + uniform_unit(rng));
      double fmax = 0.0;
      for (double& v : f) {
        v /= shrink;
        fmax = std::max(fmax, v);
      }
      double f0 = fmax * (1.0 + uniform_unit(rng));
      std::vector<double> periods(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) periods[i] = 1.0 / f[i];
      double val = relaxation_objective(ins, 1.0 / f0, periods);
      CHECK(sol.objective <= val * (1.0 + 1e-7) + 1e-12);
    }
  }
}

TEST_CASE("cost scaling moves the objective, not the argmin") {
  std::mt19937_64 rng(113);
  for (double c : {3.0, 0.2}) {
    Instance ins = random_instance(rng, 6, 2);
    Instance scaled = ins;
    scaled.joint_cost *= c;
    for (Commodity& com : scaled.commodities) {
      com.order_cost *= c;
      com.holding_cost *= c;
    }
    RelaxedSolution a = solve_relaxation(ins);
    RelaxedSolution b = solve_relaxation(scaled);
    CHECK(b.objective == doctest::Approx(c * a.objective).epsilon(1e-8));
    for (int i = 0; i < ins.n(); ++i) {
      CHECK(b.periods[i] == doctest::Approx(a.periods[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("time rescaling is covariant") {
  // Stretching the clock by c maps K_i -> K_i, H_i -> H_i / c^2,
  // alpha -> c * alpha; periods scale by c and the objective by 1/c.
  std::mt19937_64 rng(127);
  const double c = 2.5;
  for (int it = 0; it < 6; ++it) {
    Instance ins = random_instance(rng, 5, 2);
    Instance stretched = ins;
    for (Commodity& com : stretched.commodities) {
      com.holding_cost /= c * c;
    }
    for (auto& row : stretched.resource_use) {
      for (double& a : row) a *= c;
    }
    RelaxedSolution a = solve_relaxation(ins);
    RelaxedSolution b = solve_relaxation(stretched);
    CHECK(b.objective == doctest::Approx(a.objective / c).epsilon(1e-8));
    CHECK(b.t_min == doctest::Approx(c * a.t_min).epsilon(1e-6));
    for (int i = 0; i < ins.n(); ++i) {
      CHECK(b.periods[i] == doctest::Approx(c * a.periods[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("removing a slack resource changes nothing") {
  std::mt19937_64 rng(131);
  for (int it = 0; it < 6; ++it) {
    Instance ins = random_instance(rng, 6, 2);
    RelaxedSolution full = solve_relaxation(ins);
    bool removed = false;
    for (int d = 0; d < ins.resources(); ++d) {
      bool is_active = false;
      for (int a : full.active_resources) is_active = is_active || a == d;
      if (is_active) continue;
      Instance reduced = ins;
      reduced.resource_use.erase(reduced.resource_use.begin() + d);
      RelaxedSolution r = solve_relaxation(reduced);
      CHECK(r.objective == doctest::Approx(full.objective).epsilon(1e-8));
      for (int i = 0; i < ins.n(); ++i) {
        CHECK(r.periods[i] == doctest::Approx(full.periods[i]).epsilon(1e-5));
      }
      removed = true;
      break;
    }
    (void)removed;
  }
}

TEST_CASE("kkt_check flags bad points") {
  Instance ins = make_instance(1.0, {{1.0, 1.0}});
  RelaxedSolution sol = solve_relaxation(ins);

  RelaxedSolution bumped = sol;
  bumped.periods[0] *= 1.05;
  bumped.objective = relaxation_objective(ins, bumped.t_min, bumped.periods);
  KktReport rep = kkt_check(ins, bumped);
  CHECK(rep.max_residual() > 1e-3);
  CHECK(rep.stationarity > 1e-3);

  // Claiming a slack resource is binding gets flagged.
  Instance with_res = make_instance(1.0, {{1.0, 1.0}}, {{0.1}});
  RelaxedSolution honest = solve_relaxation(with_res);
  CHECK(honest.active_resources.empty());
  RelaxedSolution lying = honest;
  lying.active_resources = {0};
  KktReport flag = kkt_check(with_res, lying);
  REQUIRE(flag.misreported_resources.size() == 1);
  CHECK(flag.misreported_resources[0] == 0);

  RelaxedSolution wrong_dims = sol;
  wrong_dims.periods.push_back(1.0);
  CHECK_THROWS_AS(kkt_check(ins, wrong_dims), std::invalid_argument);
}

TEST_CASE("solver input validation") {
  Instance bad = make_instance(-1.0, {{1.0, 1.0}});
  CHECK_THROWS_AS(solve_relaxation(bad), std::invalid_argument);
  Instance ok = make_instance(1.0, {{1.0, 1.0}});
  CHECK_THROWS_AS(solve_relaxation(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_relaxation(ok, 1.0), std::invalid_argument);
}

TEST_CASE("duals recovered at the optimum sum to the joint cost") {
  std::mt19937_64 rng(137);
  for (int it = 0; it < 10; ++it) {
    Instance ins = random_instance(rng, 4 + static_cast<int>(rng() % 6),
                                   static_cast<int>(rng() % 3));
    RelaxedSolution sol = solve_relaxation(ins);
    KktReport rep = kkt_check(ins, sol);
    double sum = 0.0;
    for (double l : rep.commodity_duals) sum += l;
    CHECK(sum == doctest::Approx(ins.joint_cost)
                     .epsilon(1e-6 * std::max(1.0, ins.joint_cost)));
  }
}
