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

#include <map>
#include <optional>
#include <vector>

#include "rcjrp/rational.hpp"

namespace rcjrp {

/// Value q * m^(p/k) with q an exact positive rational and 0 <= p < k.
/// Whole powers of m are folded into q, so for a fixed (m, k) with m^(1/k)
/// irrational, two values are commensurable (have a finite common integer
/// multiple) exactly when their p fields agree.
struct ScaledPower {
  Rational q{1};
  int p = 0;

  bool operator==(const ScaledPower& o) const { return q == o.q && p == o.p; }
};

/// Base of a power-of-m^(1/k) grid family. make() reduces (m, k) so that the
/// radical m^(1/k) is expressed over the smallest integer base: (4, 2) becomes
/// (2, 1), (4, 4) becomes (2, 2). After reduction, m^(1/k) is rational iff
/// k == 1, which the ScaledPower commensurability rule relies on.
struct GridBase {
  int m = 2;
  int k = 1;

  static GridBase make(int m, int k);

  double root() const;  // m^(1/k)
  bool rational_root() const { return k == 1; }

  ScaledPower canonical(Rational q, long long p) const;
  double value(const ScaledPower& s) const;
};

/// Sum of rational multiples of m^(p/k), p in [0, k): exact representation of
/// inclusion-exclusion totals over a multiplier set.
class ExactSum {
 public:
  explicit ExactSum(GridBase base) : base_(base) {}

  void add(long long p, const Rational& coeff);
  double to_double() const;
  const std::map<int, Rational>& terms() const { return terms_; }
  GridBase base() const { return base_; }

  /// The coefficient of m^(p/k); zero if absent.
  Rational coeff(int p) const;

 private:
  GridBase base_;
  std::map<int, Rational> terms_;
};

/// Finite set of distinct grid multipliers over one base.
class MultiplierSet {
 public:
  explicit MultiplierSet(GridBase base) : base_(base) {}

  void add(const ScaledPower& s);
  void add(Rational q, long long p) { add(base_.canonical(q, p)); }

  const std::vector<ScaledPower>& elements() const { return elems_; }
  GridBase base() const { return base_; }
  std::size_t size() const { return elems_.size(); }

 private:
  GridBase base_;
  std::vector<ScaledPower> elems_;
};

/// Least positive common integer multiple of the set, or nullopt when none
/// exists (elements spanning distinct residue classes of an irrational root
/// have no finite common multiple).
std::optional<ScaledPower> lcm_scaled(const MultiplierSet& set);

/// Sum over nonempty subsets T of (-1)^(|T|+1) / LCM(T). Subsets without a
/// finite LCM contribute zero. Requires |set| <= 24.
ExactSum inclusion_exclusion_sum(const MultiplierSet& set);

/// Grid family configuration: points q * m^((p + theta)/k) * anchor with
/// q in {1, alpha}. alpha == 1 is a plain grid; alpha in (1, m^(1/k)) gives
/// the two-phase interleaved grid. theta == nullopt means "drawn uniformly
/// from [0, 1]" (the randomized families); a concrete theta in [0, 1] pins
/// the shift.
struct GridConfig {
  GridBase base;
  Rational alpha{1};
  std::optional<double> theta;
  double anchor = 1.0;

  static GridConfig make(int m, int k, Rational alpha,
                         std::optional<double> theta, double anchor);

  bool interleaved() const { return !(alpha == Rational(1)); }
  double root() const { return base.root(); }
  double beta() const;  // log_root(alpha), in [0, 1)
  GridConfig with_theta(double t) const;
};

/// A grid point: its double value and the exact multiplier index such that
/// value == base.value(index) * m^(theta/k) * anchor.
struct GridPoint {
  ScaledPower index;
  double value = 0.0;
};

/// Strictly smallest grid point greater than t. Grid points round to their
/// successor, never to themselves. Requires concrete theta and t > 0.
GridPoint round_up(const GridConfig& config, double t);

/// The base multiplier set {m^((kappa-1)/k)}, kappa = 1..k.
MultiplierSet base_multipliers(const GridConfig& config);
/// Primary-phase set: base plus {alpha * m^((kappa-1)/k)}.
MultiplierSet primary_multipliers(const GridConfig& config);
/// Secondary-phase set: base plus {(1/alpha) * m^(kappa/k)}.
MultiplierSet secondary_multipliers(const GridConfig& config);

/// Minimal multipliers whose integer-multiple union covers every grid point
/// at or above the anchor's shifted successor, together with the common scale
/// factor. count_joint_orders on these progressions measures the same union
/// the closed-form density describes.
struct DensitySupport {
  std::vector<ScaledPower> multipliers;
  double scale = 0.0;  // common factor applied to each multiplier
};
DensitySupport density_support(const GridConfig& config);

/// Asymptotic joint-order density of the unshifted (theta = 0 style) grid:
/// inclusion-exclusion over the base set divided by m^(1/k) * anchor.
double density_static(const GridConfig& config);

/// Density coefficient at a concrete shift. For alpha == 1 this is
/// IE(base set) / (m^(theta/k) * anchor); for alpha > 1 the primary branch
/// applies for theta <= 1 - beta and the secondary branch after, ties going
/// to the primary branch.
double density_interleaved(const GridConfig& config);

/// Expected rounded value E[R(t)] over theta ~ U[0,1].
double expected_round(const GridConfig& config, double t);
/// Expected reciprocal E[1/R(t)] over theta ~ U[0,1].
double expected_recip_round(const GridConfig& config, double t);
/// Expected density coefficient over theta ~ U[0,1].
double expected_density(const GridConfig& config);

/// Per-term cost multipliers (joint, individual ordering, holding) for the
/// family the config describes: concrete theta == 0 gives the static bounds,
/// random theta the expectation bounds, alpha > 1 the interleaved ones.
struct CostMultipliers {
  double v_joint = 0.0;
  double v_order = 0.0;
  double v_hold = 0.0;
};
CostMultipliers multipliers_static(const GridConfig& config);
CostMultipliers multipliers_shifted(const GridConfig& config);
CostMultipliers multipliers_interleaved(const GridConfig& config);
CostMultipliers multipliers(const GridConfig& config);

/// Exact inclusion-exclusion sums over the primary and secondary sets as
/// rationals when the root is rational (k == 1); used by the verification
/// sweeps for exact-equality checks.
Rational interleaved_sum_primary_rational(const GridConfig& config);
Rational interleaved_sum_secondary_rational(const GridConfig& config);

}  // namespace rcjrp
