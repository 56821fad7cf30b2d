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

#include "rcjrp/factor_lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rcjrp/gridmath.hpp"

namespace rcjrp {
namespace {

double plain_grid_sum(int k) {
  GridConfig config = GridConfig::make(2, k, Rational(1), 0.0, 1.0);
  return inclusion_exclusion_sum(base_multipliers(config)).to_double();
}

// Dense dual simplex for min 1'w s.t. M w >= 1, w >= 0, with many columns
// and a row set that grows between reoptimizations. The all-surplus basis is
// dual feasible, and so is the optimal basis of the previous row set after
// new rows join with their surplus basic, so every reoptimization is a warm
// start.
class CoveringSolver {
 public:
  explicit CoveringSolver(int columns) : columns_(columns) {
    is_basic_.assign(static_cast<std::size_t>(columns_), 0);
  }

  int row_count() const { return static_cast<int>(rows_.size()); }
  int pivots() const { return pivots_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  void add_row(std::vector<double> row) {
    const int r = row_count();
    rows_.push_back(std::move(row));
    grow(r);
    basic_.push_back(columns_ + r);
    is_basic_.push_back(1);
    const auto& coeffs = rows_.back();
    for (int j = 0; j < columns_; ++j) {
      columns_major_[static_cast<std::size_t>(j) * capacity_ + r] =
          coeffs[static_cast<std::size_t>(j)];
    }
    // New inverse row: the new constraint expressed in the old basis,
    // negated for the surplus column; the new inverse column is zero above
    // the diagonal because no old basic variable touches the new row, so
    // existing basic values and prices are unchanged.
    double* last = &binv_[static_cast<std::size_t>(r) * capacity_];
    for (int i = 0; i < r; ++i) {
      if (basic_[static_cast<std::size_t>(i)] < columns_) {
        const double weight = coeffs[static_cast<std::size_t>(
            basic_[static_cast<std::size_t>(i)])];
        if (weight != 0.0) {
          const double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
          for (int c = 0; c < r; ++c) last[c] += weight * row_i[c];
        }
      }
    }
    last[r] = -1.0;
    double value = 0.0;
    for (int c = 0; c <= r; ++c) value += last[c];
    x_basic_.push_back(value);
    prices_.push_back(0.0);
  }

  // Runs the dual simplex until primal feasible. Returns false on budget
  // exhaustion.
  bool reoptimize(int budget) {
    const int r_count = row_count();
    std::vector<double> sigma(static_cast<std::size_t>(r_count));
    std::vector<double> direction(static_cast<std::size_t>(r_count));
    refresh_prices();
    for (int iter = 0; iter < budget; ++iter) {
      if (since_refactor_ >= 1500) {
        refactorize();
        refresh_x_basic();
        refresh_prices();
        since_refactor_ = 0;
      }
      const bool bland = iter > 20 * r_count + 400;
      int leave = -1;
      if (bland) {
        for (int r = 0; r < r_count; ++r) {
          if (x_basic_[static_cast<std::size_t>(r)] < -1e-11) {
            leave = r;
            break;
          }
        }
      } else {
        double worst = -1e-11;
        for (int r = 0; r < r_count; ++r) {
          if (x_basic_[static_cast<std::size_t>(r)] < worst) {
            worst = x_basic_[static_cast<std::size_t>(r)];
            leave = r;
          }
        }
      }
      if (leave < 0) return true;
      ++pivots_;
      ++since_refactor_;

      for (int r = 0; r < r_count; ++r) {
        sigma[static_cast<std::size_t>(r)] =
            binv_[static_cast<std::size_t>(leave) * capacity_ + r];
      }

      int enter = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double enter_alpha = 0.0;
      double enter_reduced = 0.0;
      const double tie = bland ? 1e-9 : 1e-15;
      for (int j = 0; j < columns_ + r_count; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        double alpha, reduced;
        if (j < columns_) {
          alpha = 0.0;
          reduced = 1.0;
          const double* column =
              &columns_major_[static_cast<std::size_t>(j) * capacity_];
          for (int r = 0; r < r_count; ++r) {
            alpha += sigma[static_cast<std::size_t>(r)] * column[r];
            reduced -= prices_[static_cast<std::size_t>(r)] * column[r];
          }
        } else {
          alpha = -sigma[static_cast<std::size_t>(j - columns_)];
          reduced = prices_[static_cast<std::size_t>(j - columns_)];
        }
        if (alpha >= -1e-11) continue;
        const double ratio = std::max(reduced, 0.0) / (-alpha);
        // Smallest index among ratio ties; the fallback widens the tie
        // window so the index rule takes over and cycling cannot persist.
        if (ratio < best_ratio - tie ||
            (ratio < best_ratio + tie && (enter < 0 || j < enter))) {
          best_ratio = std::min(best_ratio, ratio);
          enter = j;
          enter_alpha = alpha;
          enter_reduced = reduced;
        }
      }
      if (enter < 0) return false;  // rows are strictly positive

      for (int i = 0; i < r_count; ++i) {
        double sum = 0.0;
        const double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
        if (enter < columns_) {
          const double* column =
              &columns_major_[static_cast<std::size_t>(enter) * capacity_];
          for (int r = 0; r < r_count; ++r) sum += row_i[r] * column[r];
        } else {
          sum = -row_i[enter - columns_];
        }
        direction[static_cast<std::size_t>(i)] = sum;
      }
      const double pivot = direction[static_cast<std::size_t>(leave)];
      double* lead = &binv_[static_cast<std::size_t>(leave) * capacity_];
      for (int r = 0; r < r_count; ++r) lead[r] /= pivot;
      for (int i = 0; i < r_count; ++i) {
        if (i == leave) continue;
        const double factor = direction[static_cast<std::size_t>(i)];
        if (factor == 0.0) continue;
        double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
        for (int r = 0; r < r_count; ++r) row_i[r] -= factor * lead[r];
      }
      is_basic_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(
          leave)])] = 0;
      is_basic_[static_cast<std::size_t>(enter)] = 1;
      basic_[static_cast<std::size_t>(leave)] = enter;

      const double step = x_basic_[static_cast<std::size_t>(leave)] / pivot;
      for (int i = 0; i < r_count; ++i) {
        if (i == leave) continue;
        x_basic_[static_cast<std::size_t>(i)] -=
            direction[static_cast<std::size_t>(i)] * step;
      }
      x_basic_[static_cast<std::size_t>(leave)] = step;
      // Price update keeping the entering reduced cost at zero:
      // c'_j = c_j - gamma * alpha_j with gamma = c_enter / alpha_enter.
      const double gamma = std::max(enter_reduced, 0.0) / enter_alpha;
      for (int r = 0; r < r_count; ++r) {
        prices_[static_cast<std::size_t>(r)] +=
            gamma * sigma[static_cast<std::size_t>(r)];
      }
    }
    return false;
  }

  std::vector<double> witness_weights() const {
    std::vector<double> w(static_cast<std::size_t>(columns_), 0.0);
    for (int i = 0; i < row_count(); ++i) {
      const int var = basic_[static_cast<std::size_t>(i)];
      if (var < columns_) {
        w[static_cast<std::size_t>(var)] =
            std::max(x_basic_[static_cast<std::size_t>(i)], 0.0);
      }
    }
    return w;
  }

  double objective() const {
    double sum = 0.0;
    for (int i = 0; i < row_count(); ++i) {
      if (basic_[static_cast<std::size_t>(i)] < columns_) {
        sum += std::max(x_basic_[static_cast<std::size_t>(i)], 0.0);
      }
    }
    return sum;
  }

  std::vector<double> row_prices() {
    refresh_prices();
    std::vector<double> out(prices_.begin(), prices_.begin() + row_count());
    for (double& p : out) p = std::max(p, 0.0);
    return out;
  }

 private:
  void grow(int existing_rows) {
    if (existing_rows < capacity_) return;
    int next = capacity_ == 0 ? 64 : capacity_;
    while (next <= existing_rows) next *= 2;
    std::vector<double> wider(static_cast<std::size_t>(next) * next, 0.0);
    for (int i = 0; i < existing_rows; ++i) {
      const double* src = &binv_[static_cast<std::size_t>(i) * capacity_];
      double* dst = &wider[static_cast<std::size_t>(i) * next];
      for (int c = 0; c < existing_rows; ++c) dst[c] = src[c];
    }
    binv_ = std::move(wider);
    std::vector<double> columns(
        static_cast<std::size_t>(columns_) * next, 0.0);
    for (int j = 0; j < columns_; ++j) {
      for (int r = 0; r < existing_rows; ++r) {
        columns[static_cast<std::size_t>(j) * next + r] =
            rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      }
    }
    columns_major_ = std::move(columns);
    capacity_ = next;
  }

  void refresh_x_basic() {
    const int r_count = row_count();
    for (int i = 0; i < r_count; ++i) {
      double sum = 0.0;
      const double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
      for (int r = 0; r < r_count; ++r) sum += row_i[r];
      x_basic_[static_cast<std::size_t>(i)] = sum;
    }
  }

  void refresh_prices() {
    const int r_count = row_count();
    prices_.assign(static_cast<std::size_t>(r_count), 0.0);
    for (int i = 0; i < r_count; ++i) {
      if (basic_[static_cast<std::size_t>(i)] >= columns_) continue;
      const double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
      for (int r = 0; r < r_count; ++r) {
        prices_[static_cast<std::size_t>(r)] += row_i[r];
      }
    }
  }

  // Rebuilds the basis inverse from the basis columns, shedding the drift
  // of accumulated rank-one updates.
  void refactorize() {
    const int r_count = row_count();
    Eigen::MatrixXd basis(r_count, r_count);
    for (int i = 0; i < r_count; ++i) {
      const int var = basic_[static_cast<std::size_t>(i)];
      for (int r = 0; r < r_count; ++r) {
        if (var < columns_) {
          basis(r, i) = rows_[static_cast<std::size_t>(r)]
                             [static_cast<std::size_t>(var)];
        } else {
          basis(r, i) = (var - columns_ == r) ? -1.0 : 0.0;
        }
      }
    }
    Eigen::MatrixXd inverse = basis.partialPivLu().inverse();
    for (int i = 0; i < r_count; ++i) {
      double* row_i = &binv_[static_cast<std::size_t>(i) * capacity_];
      for (int r = 0; r < r_count; ++r) row_i[r] = inverse(i, r);
    }
  }

  int columns_ = 0;
  int capacity_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<int> basic_;
  std::vector<char> is_basic_;
  std::vector<double> binv_;
  std::vector<double> columns_major_;
  std::vector<double> x_basic_;
  std::vector<double> prices_;
  int pivots_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

double LpModel::theta_of(int row) const {
  if (shifts == 0) return 0.0;
  return static_cast<double>(shift_index(row)) / shifts;
}

double LpModel::coefficient(int row, int col) const {
  const int k = k_of(row);
  const int ell = shift_index(row);
  const double theta = theta_of(row);
  const double root = std::exp2(1.0 / k);
  const double shrink = std::exp2(-theta / k);  // root^(-theta)
  if (col == 0) return shrink * (k == 1 ? z_sum_k1 : z_sum_k2);

  const auto& phi_num = (k == 1) ? phi_num_k1 : phi_num_k2;
  const auto& phi_pow = (k == 1) ? phi_pow_k1 : phi_pow_k2;
  const bool is_x = col <= classes;
  const int nu = is_x ? col : col - classes;
  // theta <= phi, compared exactly: ell/L <= phi_num/N.
  const bool low_shift =
      static_cast<long long>(ell) * classes <= phi_num[nu] * shifts;
  double x_coeff = phi_pow[nu] * shrink;
  if (low_shift) x_coeff /= root;
  return is_x ? x_coeff : 1.0 / x_coeff;
}

void LpModel::fill_row(int row, std::vector<double>& out) const {
  const int k = k_of(row);
  const int ell = shift_index(row);
  const double theta = theta_of(row);
  const double root = std::exp2(1.0 / k);
  const double shrink = std::exp2(-theta / k);
  const auto& phi_num = (k == 1) ? phi_num_k1 : phi_num_k2;
  const auto& phi_pow = (k == 1) ? phi_pow_k1 : phi_pow_k2;

  out.resize(static_cast<std::size_t>(adversary_columns()));
  out[0] = shrink * (k == 1 ? z_sum_k1 : z_sum_k2);
  for (int nu = 1; nu <= classes; ++nu) {
    const bool low_shift =
        static_cast<long long>(ell) * classes <= phi_num[nu] * shifts;
    double x_coeff = phi_pow[nu] * shrink;
    if (low_shift) x_coeff /= root;
    out[static_cast<std::size_t>(nu)] = x_coeff;
    out[static_cast<std::size_t>(classes + nu)] = 1.0 / x_coeff;
  }
}

LpModel build_lp(int classes, int shifts) {
  if (classes < 1 || shifts < 0) {
    throw std::invalid_argument("build_lp: need classes >= 1 and shifts >= 0");
  }
  LpModel model;
  model.classes = classes;
  model.shifts = shifts;
  model.z_sum_k1 = plain_grid_sum(1);
  model.z_sum_k2 = plain_grid_sum(2);
  model.phi_num_k1.assign(static_cast<std::size_t>(classes) + 1, 0);
  model.phi_num_k2.assign(static_cast<std::size_t>(classes) + 1, 0);
  model.phi_pow_k1.assign(static_cast<std::size_t>(classes) + 1, 1.0);
  model.phi_pow_k2.assign(static_cast<std::size_t>(classes) + 1, 1.0);
  for (int nu = 1; nu <= classes; ++nu) {
    for (int k = 1; k <= 2; ++k) {
      const long long num = (static_cast<long long>(k) * nu) % classes;
      const double phi = static_cast<double>(num) / classes;
      auto& nums = (k == 1) ? model.phi_num_k1 : model.phi_num_k2;
      auto& pows = (k == 1) ? model.phi_pow_k1 : model.phi_pow_k2;
      nums[static_cast<std::size_t>(nu)] = num;
      pows[static_cast<std::size_t>(nu)] = std::exp2(phi / k);
    }
  }
  return model;
}

LpSolution solve_lp(const LpModel& model) {
  const int columns = model.adversary_columns();
  const int total_rows = model.constraint_rows();
  const int kPivotBudget = 400000;

  CoveringSolver solver(columns);
  std::vector<int> active_ids;
  std::vector<char> seen(static_cast<std::size_t>(total_rows), 0);
  std::vector<double> buffer;
  auto activate = [&](int row) {
    if (row < 0 || row >= total_rows || seen[static_cast<std::size_t>(row)]) {
      return;
    }
    seen[static_cast<std::size_t>(row)] = 1;
    active_ids.push_back(row);
    model.fill_row(row, buffer);
    solver.add_row(buffer);
  };
  activate(0);
  activate(model.shifts / 2);
  activate(model.shifts);
  activate(model.shifts + 1);
  activate(model.shifts + 1 + model.shifts / 2);
  activate(2 * model.shifts + 1);

  LpSolution solution;
  solution.status = LpStatus::kIterationCap;
  const int kMaxRounds = 2000;
  for (int round = 0; round < kMaxRounds; ++round) {
    solution.activation_rounds = round + 1;
    const bool solved = solver.reoptimize(kPivotBudget - solver.pivots());
    solution.simplex_pivots = solver.pivots();
    const double objective = solver.objective();
    if (!solved || objective <= 0.0) return solution;

    const double rho_active = 1.0 / objective;
    std::vector<double> witness = solver.witness_weights();
    for (double& value : witness) value /= objective;

    double min_value = std::numeric_limits<double>::infinity();
    // Worst violated rows this round, at most sixteen.
    std::vector<std::pair<double, int>> violated;
    for (int row = 0; row < total_rows; ++row) {
      model.fill_row(row, buffer);
      double value = 0.0;
      for (int j = 0; j < columns; ++j) value += buffer[j] * witness[j];
      min_value = std::min(min_value, value);
      if (value < rho_active - 1e-12 && !seen[static_cast<std::size_t>(row)]) {
        violated.push_back({value, row});
      }
    }
    if (violated.empty()) {
      solution.status = LpStatus::kOptimal;
      solution.rho = min_value;
      solution.z = witness[0];
      solution.x.assign(witness.begin() + 1, witness.begin() + 1 + model.classes);
      solution.y.assign(witness.begin() + 1 + model.classes, witness.end());
      const std::vector<double> prices = solver.row_prices();
      std::vector<double> column_sum(static_cast<std::size_t>(columns), 0.0);
      for (std::size_t i = 0; i < active_ids.size(); ++i) {
        const double weight = prices[i] / objective;
        if (weight <= 1e-15) continue;
        solution.certificate_rows.push_back(active_ids[i]);
        solution.certificate_weights.push_back(weight);
        const auto& coeffs = solver.rows()[i];
        for (int j = 0; j < columns; ++j) {
          column_sum[static_cast<std::size_t>(j)] += weight * coeffs[j];
        }
      }
      solution.certificate_value =
          *std::max_element(column_sum.begin(), column_sum.end());
      return solution;
    }
    std::sort(violated.begin(), violated.end());
    const std::size_t take = std::min<std::size_t>(violated.size(), 16);
    for (std::size_t i = 0; i < take; ++i) activate(violated[i].second);
  }
  return solution;
}

LpCheck check_lp_solution(const LpModel& model, const LpSolution& solution,
                          double tol) {
  LpCheck check;
  const int columns = model.adversary_columns();
  if (static_cast<int>(solution.x.size()) != model.classes ||
      static_cast<int>(solution.y.size()) != model.classes) {
    return check;
  }

  std::vector<double> witness(static_cast<std::size_t>(columns), 0.0);
  witness[0] = solution.z;
  for (int nu = 0; nu < model.classes; ++nu) {
    witness[static_cast<std::size_t>(1 + nu)] = solution.x[static_cast<std::size_t>(nu)];
    witness[static_cast<std::size_t>(1 + model.classes + nu)] =
        solution.y[static_cast<std::size_t>(nu)];
  }
  double witness_mass = 0.0;
  bool nonnegative = true;
  for (double value : witness) {
    witness_mass += value;
    nonnegative = nonnegative && value >= -tol;
  }

  std::vector<double> buffer;
  double min_value = std::numeric_limits<double>::infinity();
  for (int row = 0; row < model.constraint_rows(); ++row) {
    model.fill_row(row, buffer);
    double value = 0.0;
    for (int j = 0; j < columns; ++j) value += buffer[j] * witness[j];
    min_value = std::min(min_value, value);
  }
  check.witness_min = min_value;

  double weight_mass = 0.0;
  bool weights_ok = solution.certificate_rows.size() ==
                    solution.certificate_weights.size();
  std::vector<double> column_sum(static_cast<std::size_t>(columns), 0.0);
  for (std::size_t i = 0; weights_ok && i < solution.certificate_rows.size();
       ++i) {
    const int row = solution.certificate_rows[i];
    const double weight = solution.certificate_weights[i];
    if (row < 0 || row >= model.constraint_rows() || weight < -tol) {
      weights_ok = false;
      break;
    }
    weight_mass += weight;
    model.fill_row(row, buffer);
    for (int j = 0; j < columns; ++j) {
      column_sum[static_cast<std::size_t>(j)] += weight * buffer[j];
    }
  }
  check.certificate_max =
      *std::max_element(column_sum.begin(), column_sum.end());

  check.ok = nonnegative && weights_ok &&
             std::abs(witness_mass - 1.0) <= tol &&
             std::abs(weight_mass - 1.0) <= tol &&
             std::abs(check.witness_min - solution.rho) <= tol &&
             check.certificate_max <= solution.rho + tol;
  return check;
}

double final_guarantee(double rho, int classes) {
  return rho * std::exp2(1.0 / classes);
}

TildePolicy build_tilde_policy(const RelaxedSolution& solution,
                               const Instance& instance, int classes,
                               std::optional<double> theta) {
  if (classes < 1) {
    throw std::invalid_argument("build_tilde_policy: need classes >= 1");
  }
  const int n = instance.n();
  if (static_cast<int>(solution.periods.size()) != n) {
    throw std::invalid_argument("build_tilde_policy: period count mismatch");
  }

  // Weak round-up to powers of 2^(1/classes): grid points stay in place.
  auto grid_exponent = [&](double t) {
    return static_cast<long long>(
        std::ceil(classes * std::log2(t) - 1e-9));
  };
  const long long floor_exponent = grid_exponent(solution.t_min);
  RelaxedSolution tilde = solution;
  tilde.t_min = std::exp2(static_cast<double>(floor_exponent) / classes);
  std::vector<long long> exponents(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const long long e =
        std::max(grid_exponent(solution.periods[static_cast<std::size_t>(i)]),
                 floor_exponent);
    exponents[static_cast<std::size_t>(i)] = e;
    tilde.periods[static_cast<std::size_t>(i)] =
        std::exp2(static_cast<double>(e) / classes);
  }

  TildePolicy result;
  result.periods = tilde.periods;
  result.t_min = tilde.t_min;
  result.objective = relaxation_objective(instance, tilde.t_min, tilde.periods);
  auto config = [&](int k, std::optional<double> shift) {
    return GridConfig::make(2, k, Rational(1), shift, tilde.t_min);
  };

  if (theta.has_value()) {
    result.theta = *theta;
    result.choice =
        best_of_two(tilde, instance, config(1, *theta), config(2, *theta));
    return result;
  }

  // Piecewise search: on each piece of the combined cut structure both
  // rounding assignments are fixed, so each grid's cost is
  // a * root^theta + b * root^(-theta) and its interior minimum is closed
  // form. The best shift for the cheaper-of-two is the best per-grid
  // minimum over the union of pieces.
  std::vector<double> cuts{0.0, 1.0};
  for (int k = 1; k <= 2; ++k) {
    for (int i = 0; i < n; ++i) {
      const long long diff =
          exponents[static_cast<std::size_t>(i)] - floor_exponent;
      const long long num = (static_cast<long long>(k) * diff) % classes;
      cuts.push_back(static_cast<double>(num) / classes);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a <= 1e-12; }),
             cuts.end());
  if (cuts.back() < 1.0) cuts.push_back(1.0);

  double best_cost = std::numeric_limits<double>::infinity();
  auto consider = [&](double shift) {
    PolicyChoice choice =
        best_of_two(tilde, instance, config(1, shift), config(2, shift));
    if (choice.cost.total < best_cost) {
      best_cost = choice.cost.total;
      result.theta = shift;
      result.choice = std::move(choice);
    }
  };

  consider(0.0);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double hi = cuts[c + 1];
    consider(hi);
    consider(lo + 1e-9 * (hi - lo));
    for (int k = 1; k <= 2; ++k) {
      const double root = std::exp2(1.0 / k);
      Policy at_hi = build_policy(tilde, config(k, hi));
      CostBreakdown cost_hi = evaluate(at_hi, instance, solution.objective);
      const double shrink = (cost_hi.joint + cost_hi.individual_ordering) *
                            std::pow(root, hi);
      const double grow = cost_hi.holding * std::pow(root, -hi);
      if (shrink <= 0.0 || grow <= 0.0) continue;
      const double interior =
          std::log(shrink / grow) / (2.0 * std::log(root));
      if (interior > lo && interior < hi) consider(interior);
    }
  }
  return result;
}

}  // namespace rcjrp
