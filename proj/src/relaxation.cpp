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

#include "rcjrp/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace rcjrp {

namespace {

constexpr double kActiveGap = 1e-6;

struct BarrierState {
  Eigen::VectorXd f;  // commodity frequencies
  double f0 = 0.0;    // joint frequency, f_i <= f0
};

double barrier_value(const Instance& ins, const BarrierState& x, double mu) {
  const int n = ins.n();
  double val = ins.joint_cost * x.f0;
  for (int i = 0; i < n; ++i) {
    const Commodity& c = ins.commodities[static_cast<std::size_t>(i)];
    double fi = x.f(i);
    if (fi <= 0.0 || fi >= x.f0) return std::numeric_limits<double>::infinity();
    val += c.order_cost * fi + c.holding_cost / fi;
    val -= mu * std::log(x.f0 - fi);
  }
  for (int d = 0; d < ins.resources(); ++d) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) {
      s -= ins.resource_use[static_cast<std::size_t>(d)]
                           [static_cast<std::size_t>(i)] *
           x.f(i);
    }
    if (s <= 0.0) return std::numeric_limits<double>::infinity();
    val -= mu * std::log(s);
  }
  return val;
}

RelaxedSolution finish(const Instance& ins, const BarrierState& x,
                       bool converged, int iterations) {
  RelaxedSolution out;
  out.t_min = 1.0 / x.f0;
  out.periods.resize(static_cast<std::size_t>(ins.n()));
  for (int i = 0; i < ins.n(); ++i) {
    out.periods[static_cast<std::size_t>(i)] = 1.0 / x.f(i);
  }
  out.objective = relaxation_objective(ins, out.t_min, out.periods);
  for (int d = 0; d < ins.resources(); ++d) {
    double s = 1.0;
    for (int i = 0; i < ins.n(); ++i) {
      s -= ins.resource_use[static_cast<std::size_t>(d)]
                           [static_cast<std::size_t>(i)] *
           x.f(i);
    }
    if (s <= kActiveGap) out.active_resources.push_back(d);
  }
  out.converged = converged;
  out.iterations = iterations;
  out.kkt_residual = kkt_check(ins, out).max_residual();
  return out;
}

// With no resource rows the problem separates: clamp each period at a
// common floor and minimize the floor by scanning the sorted breakpoints.
RelaxedSolution solve_unconstrained(const Instance& ins) {
  const int n = ins.n();
  std::vector<double> eoq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Commodity& c = ins.commodities[static_cast<std::size_t>(i)];
    eoq[static_cast<std::size_t>(i)] = std::sqrt(c.order_cost / c.holding_cost);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return eoq[static_cast<std::size_t>(a)] < eoq[static_cast<std::size_t>(b)];
  });

  auto value_at = [&](double t_min) {
    double v = ins.joint_cost / t_min;
    for (int i = 0; i < n; ++i) {
      const Commodity& c = ins.commodities[static_cast<std::size_t>(i)];
      double t = std::max(eoq[static_cast<std::size_t>(i)], t_min);
      v += c.order_cost / t + c.holding_cost * t;
    }
    return v;
  };

  double best_t = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  double sk = ins.joint_cost;
  double sh = 0.0;
  for (int j = 0; j < n; ++j) {
    int i = order[static_cast<std::size_t>(j)];
    const Commodity& c = ins.commodities[static_cast<std::size_t>(i)];
    sk += c.order_cost;
    sh += c.holding_cost;
    double lo = eoq[static_cast<std::size_t>(i)];
    double hi = j + 1 < n
                    ? eoq[static_cast<std::size_t>(order[static_cast<std::size_t>(j + 1)])]
                    : std::numeric_limits<double>::infinity();
    double cand = std::sqrt(sk / sh);
    cand = std::max(cand, lo);
    cand = std::min(cand, hi);
    double v = value_at(cand);
    if (v < best_v) {
      best_v = v;
      best_t = cand;
    }
  }

  RelaxedSolution out;
  out.t_min = best_t;
  out.periods.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.periods[static_cast<std::size_t>(i)] =
        std::max(eoq[static_cast<std::size_t>(i)], best_t);
  }
  out.objective = relaxation_objective(ins, out.t_min, out.periods);
  out.converged = true;
  out.iterations = 0;
  out.kkt_residual = kkt_check(ins, out).max_residual();
  return out;
}

}  // namespace

double relaxation_objective(const Instance& instance, double t_min,
                            const std::vector<double>& periods) {
  if (!(t_min > 0.0) ||
      periods.size() != instance.commodities.size()) {
    throw std::invalid_argument("relaxation_objective: bad point");
  }
  double v = instance.joint_cost / t_min;
  for (int i = 0; i < instance.n(); ++i) {
    double t = periods[static_cast<std::size_t>(i)];
    if (!(t > 0.0)) {
      throw std::invalid_argument("relaxation_objective: bad point");
    }
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    v += c.order_cost / t + c.holding_cost * t;
  }
  return v;
}

RelaxedSolution solve_relaxation(const Instance& instance, double tol) {
  ValidationReport report = validate(instance);
  if (!report.ok()) {
    throw std::invalid_argument("solve_relaxation: invalid instance: " +
                                report.violations.front());
  }
  if (!(tol > 0.0) || tol > 1e-3) {
    throw std::invalid_argument("solve_relaxation: tol must be in (0, 1e-3]");
  }
  if (instance.resources() == 0) return solve_unconstrained(instance);

  const int n = instance.n();
  const int D = instance.resources();

  BarrierState x;
  x.f.resize(n);
  for (int i = 0; i < n; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    x.f(i) = std::sqrt(c.holding_cost / (c.order_cost + instance.joint_cost));
  }
  double load = 1.0;
  for (int d = 0; d < D; ++d) {
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      row += instance.resource_use[static_cast<std::size_t>(d)]
                                  [static_cast<std::size_t>(i)] *
             x.f(i);
    }
    load = std::max(load, row);
  }
  x.f /= 2.0 * load;
  x.f0 = 2.0 * x.f.maxCoeff();

  double mu = 0.1 * barrier_value(instance, x, 0.0);
  const double mu_floor = mu * 1e-17;
  int total_newton = 0;
  RelaxedSolution best = finish(instance, x, false, 0);

  for (int stage = 0; stage < 60; ++stage) {
    for (int it = 0; it < 80; ++it) {
      ++total_newton;
      Eigen::VectorXd grad(n + 1);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
      std::vector<double> slack(static_cast<std::size_t>(D));
      for (int d = 0; d < D; ++d) {
        double s = 1.0;
        for (int i = 0; i < n; ++i) {
          s -= instance.resource_use[static_cast<std::size_t>(d)]
                                    [static_cast<std::size_t>(i)] *
               x.f(i);
        }
        slack[static_cast<std::size_t>(d)] = s;
      }
      for (int i = 0; i < n; ++i) {
        const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
        double fi = x.f(i);
        double gap = x.f0 - fi;
        grad(i) = c.order_cost - c.holding_cost / (fi * fi) + mu / gap;
        hess(i, i) = 2.0 * c.holding_cost / (fi * fi * fi) + mu / (gap * gap);
        hess(i, n) = -mu / (gap * gap);
        hess(n, i) = hess(i, n);
        hess(n, n) += mu / (gap * gap);
      }
      grad(n) = instance.joint_cost;
      for (int i = 0; i < n; ++i) grad(n) -= mu / (x.f0 - x.f(i));
      for (int d = 0; d < D; ++d) {
        double s = slack[static_cast<std::size_t>(d)];
        const auto& row = instance.resource_use[static_cast<std::size_t>(d)];
        for (int i = 0; i < n; ++i) {
          double ai = row[static_cast<std::size_t>(i)];
          if (ai == 0.0) continue;
          grad(i) += mu * ai / s;
          for (int j = i; j < n; ++j) {
            double aj = row[static_cast<std::size_t>(j)];
            if (aj == 0.0) continue;
            hess(i, j) += mu * ai * aj / (s * s);
            if (i != j) hess(j, i) = hess(i, j);
          }
        }
      }

      Eigen::VectorXd step;
      for (double ridge = 0.0;; ridge = std::max(ridge * 10.0, 1e-12)) {
        Eigen::MatrixXd h = hess;
        if (ridge > 0.0) h.diagonal().array() += ridge * hess.diagonal().maxCoeff();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        step = ldlt.solve(-grad);
        if (ldlt.info() == Eigen::Success && step.allFinite() &&
            grad.dot(step) < 0.0) {
          break;
        }
        if (ridge > 1e-2) {
          step = -grad;  // give up on curvature, fall back to descent
          break;
        }
      }

      double decrement = -grad.dot(step);
      if (decrement <= 1e-16 * (1.0 + std::abs(barrier_value(instance, x, mu)))) {
        break;
      }

      // Fraction-to-boundary cap, then simple backtracking.
      double alpha = 1.0;
      for (int i = 0; i < n; ++i) {
        double di = step(i);
        double dgap = step(n) - di;
        double gap = x.f0 - x.f(i);
        if (di < 0.0) alpha = std::min(alpha, -0.99 * x.f(i) / di);
        if (dgap < 0.0) alpha = std::min(alpha, -0.99 * gap / dgap);
      }
      for (int d = 0; d < D; ++d) {
        double ds = 0.0;
        const auto& row = instance.resource_use[static_cast<std::size_t>(d)];
        for (int i = 0; i < n; ++i) {
          ds -= row[static_cast<std::size_t>(i)] * step(i);
        }
        if (ds < 0.0) {
          alpha = std::min(alpha, -0.99 * slack[static_cast<std::size_t>(d)] / ds);
        }
      }
      double base = barrier_value(instance, x, mu);
      int backtracks = 0;
      while (backtracks < 60) {
        BarrierState trial = x;
        trial.f += alpha * step.head(n);
        trial.f0 += alpha * step(n);
        if (barrier_value(instance, trial, mu) <=
            base + 1e-4 * alpha * grad.dot(step)) {
          x = trial;
          break;
        }
        alpha *= 0.5;
        ++backtracks;
      }
      if (backtracks >= 60) break;
    }

    RelaxedSolution cur = finish(instance, x, false, total_newton);
    if (cur.kkt_residual < best.kkt_residual) best = cur;
    if (best.kkt_residual <= tol) {
      best.converged = true;
      return best;
    }
    mu /= 8.0;
    if (mu < mu_floor) break;
  }
  return best;  // converged stays false; caller sees the residual
}

double KktReport::max_residual() const {
  return std::max(std::max(stationarity, primal),
                  std::max(dual, complementarity));
}

KktReport kkt_check(const Instance& instance, const RelaxedSolution& solution) {
  const int n = instance.n();
  const int D = instance.resources();
  if (static_cast<int>(solution.periods.size()) != n || !(solution.t_min > 0.0)) {
    throw std::invalid_argument("kkt_check: solution does not match instance");
  }
  for (double t : solution.periods) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("kkt_check: nonpositive period");
    }
  }

  const double f0 = 1.0 / solution.t_min;
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    f(i) = 1.0 / solution.periods[static_cast<std::size_t>(i)];
  }
  std::vector<double> slack(static_cast<std::size_t>(D));
  for (int d = 0; d < D; ++d) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) {
      s -= instance.resource_use[static_cast<std::size_t>(d)]
                                [static_cast<std::size_t>(i)] *
           f(i);
    }
    slack[static_cast<std::size_t>(d)] = s;
  }

  KktReport rep;
  const double obj_scale = std::max(1.0, std::abs(solution.objective));

  for (int i = 0; i < n; ++i) {
    rep.primal = std::max(rep.primal, (f(i) - f0) / f0);
  }
  for (int d = 0; d < D; ++d) {
    rep.primal = std::max(rep.primal, -slack[static_cast<std::size_t>(d)]);
  }
  rep.primal = std::max(rep.primal, 0.0);

  std::vector<int> active;     // commodities with T_i at the floor
  std::vector<int> inactive;
  for (int i = 0; i < n; ++i) {
    if (f0 - f(i) <= kActiveGap * f0) {
      active.push_back(i);
    } else {
      inactive.push_back(i);
    }
  }
  std::vector<int> tight;  // resources used in multiplier recovery
  std::vector<bool> is_tight(static_cast<std::size_t>(D), false);
  for (int d = 0; d < D; ++d) {
    if (slack[static_cast<std::size_t>(d)] <= kActiveGap) {
      tight.push_back(d);
      is_tight[static_cast<std::size_t>(d)] = true;
    }
  }
  for (int d : solution.active_resources) {
    if (d < 0 || d >= D) {
      throw std::invalid_argument("kkt_check: active resource out of range");
    }
    if (!is_tight[static_cast<std::size_t>(d)]) {
      rep.misreported_resources.push_back(d);
      tight.push_back(d);
      is_tight[static_cast<std::size_t>(d)] = true;
    }
  }
  std::sort(tight.begin(), tight.end());

  // Multipliers for the tight capacity rows. The stationarity rows of
  // off-floor commodities constrain them directly; eliminating the floor
  // multipliers from the f0 row gives one more linear equation, which is
  // what pins the system down when every commodity sits at the floor.
  rep.resource_duals.assign(static_cast<std::size_t>(D), 0.0);
  if (!tight.empty()) {
    const int rows = static_cast<int>(inactive.size()) + 1;
    const int cols = static_cast<int>(tight.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b(rows);
    for (int r = 0; r + 1 < rows; ++r) {
      int i = inactive[static_cast<std::size_t>(r)];
      const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
      b(r) = c.holding_cost / (f(i) * f(i)) - c.order_cost;
      for (int cidx = 0; cidx < cols; ++cidx) {
        int d = tight[static_cast<std::size_t>(cidx)];
        A(r, cidx) = instance.resource_use[static_cast<std::size_t>(d)]
                                          [static_cast<std::size_t>(i)];
      }
    }
    double rhs = -instance.joint_cost;
    for (int i : active) {
      const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
      rhs += c.holding_cost / (f(i) * f(i)) - c.order_cost;
      for (int cidx = 0; cidx < cols; ++cidx) {
        int d = tight[static_cast<std::size_t>(cidx)];
        A(rows - 1, cidx) +=
            instance.resource_use[static_cast<std::size_t>(d)]
                                 [static_cast<std::size_t>(i)];
      }
    }
    b(rows - 1) = rhs;
    Eigen::VectorXd mu_raw = A.colPivHouseholderQr().solve(b);
    for (int cidx = 0; cidx < cols; ++cidx) {
      double m = mu_raw(cidx);
      if (m < 0.0) {
        rep.dual = std::max(rep.dual, -m / obj_scale);
        m = 0.0;
      }
      rep.resource_duals[static_cast<std::size_t>(tight[static_cast<std::size_t>(cidx)])] = m;
    }
  }

  // Each floor constraint gets the multiplier its stationarity row demands,
  // clamped at zero; the clamp residue is a dual-feasibility violation and
  // the product with the gap is the complementarity error. Summing the
  // multipliers exposes any mismatch against the f0 row.
  rep.commodity_duals.assign(static_cast<std::size_t>(n), 0.0);
  double lambda_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    double lam = c.holding_cost / (f(i) * f(i)) - c.order_cost;
    for (int d = 0; d < D; ++d) {
      lam -= rep.resource_duals[static_cast<std::size_t>(d)] *
             instance.resource_use[static_cast<std::size_t>(d)]
                                  [static_cast<std::size_t>(i)];
    }
    if (lam < 0.0) {
      double denom = std::max(1.0, c.holding_cost / (f(i) * f(i)) + c.order_cost);
      rep.dual = std::max(rep.dual, -lam / denom);
      lam = 0.0;
    }
    rep.commodity_duals[static_cast<std::size_t>(i)] = lam;
    lambda_sum += lam;
    rep.complementarity =
        std::max(rep.complementarity, lam * (f0 - f(i)) / obj_scale);
  }
  rep.stationarity = std::abs(instance.joint_cost - lambda_sum) /
                     std::max(1.0, instance.joint_cost);
  for (int d = 0; d < D; ++d) {
    rep.complementarity = std::max(
        rep.complementarity, rep.resource_duals[static_cast<std::size_t>(d)] *
                                 std::max(slack[static_cast<std::size_t>(d)], 0.0) /
                                 obj_scale);
  }
  return rep;
}

}  // namespace rcjrp
