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

#include <optional>
#include <vector>

#include "rcjrp/instance.hpp"
#include "rcjrp/policy.hpp"
#include "rcjrp/relaxation.hpp"

namespace rcjrp {

/// Factor-revealing model for the instance-dependent best-of-two shifted
/// policies. The adversary splits the relaxation objective into a joint
/// share z and per-residue-class ordering and holding shares x_nu, y_nu
/// (nu in 1..classes, periods restricted to powers of 2^(1/classes)); each
/// constraint row evaluates one shift theta = ell/shifts against one of the
/// two grids k in {1, 2}:
///   rho <= 2^(-theta/k) * S_k * z
///        + sum_nu (2^(nu/N) / R(2^(nu/N))) * x_nu
///        + sum_nu (R(2^(nu/N)) / 2^(nu/N)) * y_nu ,
/// with R the strict shift-theta rounding and S_k the inclusion-exclusion
/// sum of the grid's multiplier set. Together with the normalization
/// z + sum x + sum y = 1 and rho itself, the model has 2*(shifts+1) + 1
/// rows over 2*classes + 2 variables. Rows are generated on demand; only
/// O(classes) state is stored.
struct LpModel {
  int classes = 0;  // N
  int shifts = 0;   // L; theta grid is {ell/L}, or just {0} when L == 0

  double z_sum_k1 = 0.0;  // S_1
  double z_sum_k2 = 0.0;  // S_2
  std::vector<long long> phi_num_k1;  // k*nu mod N, exact numerator of phi
  std::vector<long long> phi_num_k2;
  std::vector<double> phi_pow_k1;  // B_k^phi per class
  std::vector<double> phi_pow_k2;

  int constraint_rows() const { return 2 * (shifts + 1); }
  int adversary_columns() const { return 2 * classes + 1; }

  int k_of(int row) const { return row <= shifts ? 1 : 2; }
  int shift_index(int row) const { return row <= shifts ? row : row - shifts - 1; }
  double theta_of(int row) const;

  /// Coefficient of column col in constraint row (col 0 = z, 1..N = x,
  /// N+1..2N = y).
  double coefficient(int row, int col) const;
  /// All adversary_columns() coefficients of one row.
  void fill_row(int row, std::vector<double>& out) const;
};

LpModel build_lp(int classes, int shifts);

enum class LpStatus { kOptimal, kIterationCap };

struct LpSolution {
  double rho = 0.0;
  double z = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  // Convex combination of rows whose column-wise maximum proves rho is not
  // beatable; rows outside the list carry weight zero.
  std::vector<int> certificate_rows;
  std::vector<double> certificate_weights;
  double certificate_value = 0.0;
  LpStatus status = LpStatus::kOptimal;
  int activation_rounds = 0;
  int simplex_pivots = 0;
};

/// Maximize rho over the adversary simplex. Rows are activated lazily: the
/// working set is solved as a covering program by a dense dual simplex, the
/// witness is scanned against every row of the model, and violated rows
/// join the working set until none remain.
LpSolution solve_lp(const LpModel& model);

struct LpCheck {
  double witness_min = 0.0;      // min over all rows at the witness
  double certificate_max = 0.0;  // max column value of the row combination
  bool ok = false;
};

/// Arithmetic-only recheck of a reported solution against the full model:
/// the witness must be a distribution achieving rho on its worst row, and
/// the certificate must be a distribution over rows whose combined
/// coefficients never exceed rho, all within tol.
LpCheck check_lp_solution(const LpModel& model, const LpSolution& solution,
                          double tol = 1e-9);

/// The per-instance guarantee implied by a solved model: discretizing
/// periods to powers of 2^(1/classes) costs another factor 2^(1/classes).
double final_guarantee(double rho, int classes);

struct TildePolicy {
  std::vector<double> periods;  // relaxation periods rounded to the 2^(1/N) grid
  double t_min = 0.0;
  double objective = 0.0;  // relaxation objective of the rounded point
  double theta = 0.0;
  PolicyChoice choice;
};

/// Round the relaxation solution weakly up to powers of 2^(1/classes), then
/// pick the cheaper of the two shifted policies built on the rounded point.
/// With theta given, that shift is used directly; otherwise the shift is
/// optimized over [0, 1] through the piecewise closed form.
TildePolicy build_tilde_policy(const RelaxedSolution& solution,
                               const Instance& instance, int classes,
                               std::optional<double> theta);

}  // namespace rcjrp
