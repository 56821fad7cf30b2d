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

#include "rcjrp/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rcjrp/gridmath.hpp"

namespace rcjrp {

namespace {

constexpr double kTol = 1e-12;

bool reduced_pair(int m, int k) {
  GridBase b = GridBase::make(m, k);
  return b.m == m && b.k == k;
}

void finalize(SweepReport& report) {
  report.min_value = report.entries[report.argmin].value;
  report.margin = report.min_value - report.claimed_value;
  report.ok = true;
  for (const auto& c : report.checks) report.ok = report.ok && c.ok;
  // The argmin is a running minimum, so every entry is at least min_value;
  // fold a direct scan into ok anyway so a reporting bug cannot pass silently.
  for (const auto& e : report.entries) {
    report.ok = report.ok && e.value >= report.min_value - kTol;
  }
}

SweepEntry make_entry(int m, int k, Rational alpha, double vj, double vh) {
  SweepEntry e;
  e.m = m;
  e.k = k;
  e.alpha = alpha;
  e.v_joint = vj;
  e.v_hold = vh;
  e.value = std::max(vj, vh);
  return e;
}

void push_entry(SweepReport& r, SweepEntry e) {
  r.entries.push_back(std::move(e));
  if (r.entries.back().value < r.entries[r.argmin].value - kTol) {
    r.argmin = r.entries.size() - 1;
  }
}

// Static-family coefficients for a real (not necessarily integer) number of
// subdivisions x at base m.
double static_value(int m, double x) {
  const double B = std::pow(static_cast<double>(m), 1.0 / x);
  const double vj = (1.0 - 1.0 / m) / (B - 1.0);
  return std::max(vj, B);
}

// Joint coefficient of the shift-averaged interleaved grid for a rational
// offset p/q with an irrational base root, evaluated from the per-residue
// pairing of the two phases: only {B^r, alpha B^r} shares a finite common
// multiple, giving V_J = (1 - 1/m)/ln B * (2 - (B - p/q)/(p (B - 1))).
double offset_joint_paired(int m, double B, long long p, long long q) {
  const double a = static_cast<double>(p) / static_cast<double>(q);
  return (1.0 - 1.0 / m) / std::log(B) *
         (2.0 - (B - a) / (static_cast<double>(p) * (B - 1.0)));
}

// Exact inclusion-exclusion sums of both phases for an offset of the form
// (p/q) * B^kappa. Returns the primary and secondary totals as doubles.
struct PhaseSums {
  double prim = 0.0;
  double sec = 0.0;
};

PhaseSums phase_sums_power_offset(GridBase base, long long p, long long q,
                                  int kappa) {
  MultiplierSet prim(base);
  MultiplierSet sec(base);
  const Rational a(p, q);
  const Rational inv(q, p);
  for (int j = 0; j < base.k; ++j) {
    prim.add(Rational(1), j);
    prim.add(a, j + kappa);
    sec.add(Rational(1), j);
    sec.add(inv, j + 1 - kappa);
  }
  PhaseSums s;
  s.prim = inclusion_exclusion_sum(prim).to_double();
  s.sec = inclusion_exclusion_sum(sec).to_double();
  return s;
}

double joint_power_offset(GridBase base, long long p, long long q, int kappa) {
  const double B = base.root();
  const double a =
      Rational(p, q).to_double() * std::pow(B, static_cast<double>(kappa));
  PhaseSums s = phase_sums_power_offset(base, p, q, kappa);
  return ((1.0 - a / B) * s.prim + (1.0 - 1.0 / a) * s.sec) / std::log(B);
}

std::string config_label(int m, int k, const Rational& alpha) {
  std::ostringstream os;
  os << "(" << m << "," << k;
  if (!(alpha == Rational(1))) os << "," << alpha.str();
  os << ")";
  return os.str();
}

}  // namespace

const SweepCheck* SweepReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

SweepReport sweep_static(int m_max, int k_max) {
  if (m_max < 3 || k_max < 4) {
    throw std::invalid_argument("static sweep requires m_max >= 3, k_max >= 4");
  }
  SweepReport r;
  r.family = "static";
  r.claimed_value = std::sqrt(2.0);

  double closed_form_dev = 0.0;
  for (int m = 2; m <= m_max; ++m) {
    for (int k = 1; k <= k_max; ++k) {
      if (!reduced_pair(m, k)) continue;
      const auto cfg = GridConfig::make(m, k, Rational(1), 0.0, 1.0);
      const CostMultipliers mu = multipliers_static(cfg);
      const double B = cfg.root();
      closed_form_dev = std::max(
          closed_form_dev, std::abs(mu.v_joint - (1.0 - 1.0 / m) / (B - 1.0)));
      closed_form_dev = std::max(closed_form_dev, std::abs(mu.v_hold - B));
      push_entry(r, make_entry(m, k, Rational(1), mu.v_joint, mu.v_hold));
    }
  }

  const SweepEntry& best = r.entries[r.argmin];
  r.checks.push_back({"argmin",
                      best.m == 2 && best.k == 2 &&
                          std::abs(best.value - r.claimed_value) <= kTol,
                      best.value, r.claimed_value, config_label(best.m, best.k, best.alpha)});
  r.checks.push_back({"closed form", closed_form_dev <= kTol, closed_form_dev,
                      0.0, "coefficients vs (1-1/m)/(B-1) and B"});

  // Continuous minimizer in the subdivision count at m = 2: the two
  // coefficients cross where B^2 - B - (1 - 1/m) = 0; bisect on their
  // difference, which increases in x.
  {
    double lo = 1.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double B = std::pow(2.0, 1.0 / mid);
      const double diff = (1.0 - 0.5) / (B - 1.0) - B;
      (diff < 0.0 ? lo : hi) = mid;
    }
    const double x_star = 0.5 * (lo + hi);
    const double root = 0.5 * (1.0 + std::sqrt(3.0));
    const double x_closed = std::log(2.0) / std::log(root);
    r.checks.push_back({"continuous minimizer",
                        std::abs(x_star - x_closed) <= 1e-9, x_star, x_closed,
                        "bisection vs log_((1+sqrt 3)/2) 2"});
    // Both integer neighbors of x*_2 in hand, the smaller wins.
    const double v22 = static_value(2, 2.0);
    const double v23 = static_value(2, 3.0);
    r.checks.push_back({"integer neighbors", v22 < v23, v22, v23,
                        "value at (2,2) vs (2,3)"});
  }

  // Any base m >= 3 is dominated even at its best real subdivision count:
  // the continuous minimum (1 + sqrt(5 - 4/m))/2 increases in m and already
  // exceeds sqrt(2) at m = 3.
  {
    double worst = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double prev = 0.0;
    for (int m = 3; m <= m_max; ++m) {
      const double v = 0.5 * (1.0 + std::sqrt(5.0 - 4.0 / m));
      worst = std::min(worst, v);
      monotone = monotone && v > prev;
      prev = v;
    }
    r.checks.push_back({"larger bases", monotone && worst > r.claimed_value,
                        worst, r.claimed_value,
                        "continuous minimum over m >= 3"});
  }

  finalize(r);
  return r;
}

SweepReport sweep_shifted(int m_max, int k_max) {
  if (m_max < 3 || k_max < 4) {
    throw std::invalid_argument(
        "shifted sweep requires m_max >= 3, k_max >= 4");
  }
  SweepReport r;
  r.family = "shifted";
  r.claimed_value = 2.0 * (std::sqrt(3.0) - 1.0) / std::log(3.0);

  double closed_form_dev = 0.0;
  for (int m = 2; m <= m_max; ++m) {
    for (int k = 1; k <= k_max; ++k) {
      if (!reduced_pair(m, k)) continue;
      const auto cfg = GridConfig::make(m, k, Rational(1), std::nullopt, 1.0);
      const CostMultipliers mu = multipliers_shifted(cfg);
      const double lnB = std::log(cfg.root());
      closed_form_dev = std::max(
          closed_form_dev, std::abs(mu.v_joint - (1.0 - 1.0 / m) / lnB));
      closed_form_dev = std::max(
          closed_form_dev, std::abs(mu.v_hold - (cfg.root() - 1.0) / lnB));
      push_entry(r, make_entry(m, k, Rational(1), mu.v_joint, mu.v_hold));
    }
  }

  const SweepEntry& best = r.entries[r.argmin];
  r.checks.push_back({"argmin",
                      best.m == 3 && best.k == 2 &&
                          std::abs(best.value - r.claimed_value) <= kTol,
                      best.value, r.claimed_value, config_label(best.m, best.k, best.alpha)});
  r.checks.push_back({"closed form", closed_form_dev <= kTol, closed_form_dev,
                      0.0, "coefficients vs (1-1/m)/lnB and (B-1)/lnB"});

  // The holding coefficient depends on (m, k) only through x = ln(m)/k via
  // psi(x) = (e^x - 1)/x, which is increasing; psi at x = ln(3)/2 equals the
  // optimum, so any configuration beating it must keep x below that
  // threshold.
  {
    const double threshold = 0.5 * std::log(3.0);
    const double at_threshold =
        (std::exp(threshold) - 1.0) / threshold;
    bool increasing = true;
    double prev = 0.0;
    for (int i = 1; i <= 300; ++i) {
      const double x = 0.01 * i;
      const double v = (std::exp(x) - 1.0) / x;
      increasing = increasing && v > prev;
      prev = v;
    }
    r.checks.push_back({"psi threshold",
                        std::abs(at_threshold - r.claimed_value) <= kTol &&
                            increasing,
                        at_threshold, r.claimed_value,
                        "psi(ln3/2) vs optimum; psi increasing on (0,3]"});
  }

  // Exclusion of every other base, mirroring the three-way case split: all
  // m >= 4 rows, the remaining m = 3 rows, and all m = 2 rows sit strictly
  // above the optimum.
  {
    double min4 = std::numeric_limits<double>::infinity();
    double min3 = std::numeric_limits<double>::infinity();
    double min2 = std::numeric_limits<double>::infinity();
    double vj33 = 0.0;
    for (const auto& e : r.entries) {
      if (e.m >= 4) min4 = std::min(min4, e.value);
      if (e.m == 3 && !(e.k == 2)) min3 = std::min(min3, e.value);
      if (e.m == 2) min2 = std::min(min2, e.value);
      if (e.m == 3 && e.k == 3) vj33 = e.v_joint;
    }
    r.checks.push_back({"base 4 and up", min4 > r.claimed_value + kTol, min4,
                        r.claimed_value, ""});
    r.checks.push_back({"base 3 others", min3 > r.claimed_value + kTol, min3,
                        r.claimed_value, ""});
    const double vh21 = 1.0 / std::log(2.0);
    const SweepEntry* e21 = nullptr;
    for (const auto& e : r.entries) {
      if (e.m == 2 && e.k == 1) e21 = &e;
    }
    r.checks.push_back({"base 2", min2 > r.claimed_value + kTol &&
                                      e21 != nullptr &&
                                      std::abs(e21->v_hold - vh21) <= kTol,
                        min2, r.claimed_value, "includes V_H(2,1) = 1/ln2"});
    r.checks.push_back({"base 3 deep subdivision", vj33 > r.claimed_value,
                        vj33, r.claimed_value,
                        "joint coefficient alone at (3,3)"});
  }

  finalize(r);
  return r;
}

SweepReport sweep_interleaved(int alpha_samples) {
  if (alpha_samples < 1) {
    throw std::invalid_argument("alpha sample floor must be positive");
  }
  constexpr int kMaxM = 8;
  constexpr int kMaxK = 4;
  constexpr long long kMaxP = 50;

  SweepReport r;
  r.family = "interleaved";
  r.claimed_value = 5.0 / (6.0 * std::log(2.0));

  long long parity_checked = 0;
  bool parity_ok = true;
  double paired_floor_margin = std::numeric_limits<double>::infinity();
  double wrap_gap = 0.0;       // largest formula-minus-exact drop, k >= 2
  long long below_floor = 0;   // exact value under the paired floor
  bool below_floor_benign = true;

  for (int m = 2; m <= kMaxM; ++m) {
    for (int k = 1; k <= kMaxK; ++k) {
      if (!reduced_pair(m, k)) continue;
      const GridBase base = GridBase::make(m, k);
      const double B = base.root();
      const double floor_paired =
          1.5 * (1.0 - 1.0 / m) / std::log(B);
      for (long long p = 2; p <= kMaxP; ++p) {
        for (long long q = 1; q < p; ++q) {
          if (std::gcd(p, q) != 1) continue;
          // alpha = p/q < m^(1/k), tested exactly as p^k < m q^k.
          long long pk = 1, qk = 1;
          for (int i = 0; i < k; ++i) {
            pk *= p;
            qk *= q;
          }
          if (!(pk < m * qk)) continue;
          const Rational alpha(p, q);
          const auto cfg =
              GridConfig::make(m, k, alpha, std::nullopt, 1.0);
          const CostMultipliers mu = multipliers_interleaved(cfg);
          push_entry(r, make_entry(m, k, alpha, mu.v_joint, mu.v_hold));

          if (k == 1 && m == 2) {
            // Exact parity identity for base-2 offsets: the joint
            // coefficient times ln 2 is 1 - 1/(2p) for odd p and
            // 1 - 1/(2q) for even p, as rationals.
            const Rational sp = interleaved_sum_primary_rational(cfg);
            const Rational ss = interleaved_sum_secondary_rational(cfg);
            const Rational scaled = (Rational(1) - alpha / Rational(2)) * sp +
                                    (Rational(1) - Rational(q, p)) * ss;
            const Rational expect = (p % 2 == 1)
                                        ? Rational(2 * p - 1, 2 * p)
                                        : Rational(2 * q - 1, 2 * q);
            parity_ok = parity_ok && scaled == expect;
            ++parity_checked;
          }
          if (k >= 2) {
            const double formula = offset_joint_paired(m, B, p, q);
            paired_floor_margin =
                std::min(paired_floor_margin, formula - floor_paired);
            wrap_gap = std::max(wrap_gap, formula - mu.v_joint);
            if (mu.v_joint < floor_paired - kTol) {
              ++below_floor;
              below_floor_benign =
                  below_floor_benign && mu.v_hold > r.claimed_value + 1e-3;
            }
          }
        }
      }
    }
  }

  if (static_cast<long long>(r.entries.size()) < alpha_samples) {
    throw std::invalid_argument(
        "offset enumeration cannot reach the requested sample count");
  }

  const SweepEntry& best = r.entries[r.argmin];
  r.checks.push_back(
      {"argmin",
       best.m == 2 && best.k == 1 && best.alpha == Rational(3, 2) &&
           std::abs(best.value - r.claimed_value) <= kTol &&
           std::abs(best.v_joint - best.v_hold) <= kTol,
       best.value, r.claimed_value, config_label(best.m, best.k, best.alpha)});

  {
    const SweepEntry* second = nullptr;
    long long at_min = 0;
    for (const auto& e : r.entries) {
      if (e.value <= r.claimed_value + kTol) {
        ++at_min;
        if (e.m == 2 && e.k == 1 && e.alpha == Rational(4, 3)) second = &e;
      }
    }
    r.checks.push_back(
        {"second minimizer",
         second != nullptr && at_min == 2 &&
             std::abs(second->value - r.claimed_value) <= kTol &&
             std::abs(second->v_joint - second->v_hold) <= kTol,
         static_cast<double>(at_min), 2.0, "(2,1,4/3), no third minimizer"});
  }

  r.checks.push_back({"parity closed form", parity_ok && parity_checked >= 100,
                      static_cast<double>(parity_checked), 0.0,
                      "exact rational identity, both parities"});

  {
    const auto cfg = GridConfig::make(2, 1, Rational(7, 5), std::nullopt, 1.0);
    const Rational sp = interleaved_sum_primary_rational(cfg);
    const Rational ss = interleaved_sum_secondary_rational(cfg);
    const Rational scaled = (Rational(1) - Rational(7, 10)) * sp +
                            (Rational(1) - Rational(5, 7)) * ss;
    const double vj = multipliers_interleaved(cfg).v_joint;
    r.checks.push_back({"offset 7/5",
                        scaled == Rational(13, 14) &&
                            std::abs(vj - 13.0 / (14.0 * std::log(2.0))) <=
                                kTol &&
                            vj >= r.claimed_value,
                        vj, 13.0 / (14.0 * std::log(2.0)), ""});
  }

  r.checks.push_back({"paired offset floor",
                      paired_floor_margin >= -kTol, paired_floor_margin, 0.0,
                      "per-residue formula vs 3(1-1/m)/(2 lnB)"});

  // Offsets sharing no finite common multiple with any grid power leave the
  // two phases fully independent: V_J = 2(1-1/m)/lnB, which clears the
  // optimum for every base in range.
  {
    double worst = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= kMaxM; ++m) {
      for (int k = 2; k <= kMaxK; ++k) {
        if (!reduced_pair(m, k)) continue;
        const double B = std::pow(static_cast<double>(m), 1.0 / k);
        worst = std::min(worst, 2.0 * (1.0 - 1.0 / m) / std::log(B));
      }
    }
    r.checks.push_back({"independent phases", worst > r.claimed_value + kTol,
                        worst, r.claimed_value, ""});
  }

  // Offsets of the form (p/q) B^kappa: the stated per-residue floor holds
  // with p >= 2 in closed form; the exact sums are evaluated per kappa
  // below, where the wrap of the secondary phase can push the joint
  // coefficient marginally under that floor. Such rows are recorded and
  // must still sit far above the family optimum.
  {
    double floor_margin = std::numeric_limits<double>::infinity();
    for (long long p = 2; p <= kMaxP; ++p) {
      floor_margin = std::min(
          floor_margin, (2.0 - 1.0 / static_cast<double>(p)) - 1.5);
    }
    r.checks.push_back({"power offset floor", floor_margin >= 0.0,
                        floor_margin, 0.0, "2 - 1/p vs 3/2 for p in [2,50]"});

    long long rows = 0;
    long long violations = 0;
    double worst_violation = 0.0;
    bool benign = true;
    bool kappa_one_worst = true;
    std::string example;
    for (int m = 2; m <= kMaxM; ++m) {
      for (int k = 2; k <= kMaxK; ++k) {
        if (!reduced_pair(m, k)) continue;
        const GridBase base = GridBase::make(m, k);
        const double B = base.root();
        const double floor_paired = 1.5 * (1.0 - 1.0 / m) / std::log(B);
        std::vector<double> kappa_min(static_cast<std::size_t>(k), 0.0);
        for (int kappa = 1; kappa <= k - 1; ++kappa) {
          double mn = std::numeric_limits<double>::infinity();
          for (long long q = 1; q <= 12; ++q) {
            for (long long p = 1; p <= 12; ++p) {
              if (std::gcd(p, q) != 1) continue;
              const double a = (static_cast<double>(p) / q) *
                               std::pow(B, static_cast<double>(kappa));
              if (!(a > 1.0 + 1e-12) || !(a < B - 1e-12)) continue;
              if (kappa == 1 && p == 1) continue;  // the half-base family
              const double vj = joint_power_offset(base, p, q, kappa);
              const double vh =
                  (a + B / a - 2.0) / std::log(B);
              ++rows;
              mn = std::min(mn, vj);
              if (vj < floor_paired - kTol) {
                ++violations;
                worst_violation =
                    std::min(worst_violation, vj - floor_paired);
                benign = benign && std::max(vj, vh) > r.claimed_value + 1e-3;
                if (example.empty()) {
                  std::ostringstream os;
                  os << config_label(m, k, Rational(p, q)) << " kappa="
                     << kappa;
                  example = os.str();
                }
              }
            }
          }
          kappa_min[static_cast<std::size_t>(kappa)] = mn;
        }
        for (int kappa = 2; kappa <= k - 1; ++kappa) {
          kappa_one_worst =
              kappa_one_worst &&
              kappa_min[1] <= kappa_min[static_cast<std::size_t>(kappa)] + kTol;
        }
      }
    }
    std::ostringstream os;
    os << rows << " offsets";
    if (violations > 0) os << "; first drop at " << example;
    if (!kappa_one_worst) os << "; kappa=1 not uniformly extremal";
    r.checks.push_back({"power offset exact", rows > 0 && benign,
                        static_cast<double>(violations), worst_violation,
                        os.str()});
  }

  // Offsets at exactly half the base force V_H = B/(2 lnB) >= e/2, which
  // exceeds the optimum; sampled over both the swept bases above 2 and a
  // dense range.
  {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      const double B = 1.05 + (8.0 - 1.05) * i / 1000.0;
      worst = std::min(worst, 0.5 * B / std::log(B));
    }
    for (int m = 3; m <= kMaxM; ++m) {
      worst = std::min(worst, 0.5 * m / std::log(static_cast<double>(m)));
    }
    const double half_e = 0.5 * std::exp(1.0);
    r.checks.push_back({"half base offset",
                        worst >= half_e - 1e-6 &&
                            half_e > r.claimed_value + kTol,
                        worst, half_e, "B/(2 lnB) over sampled B"});
  }

  // Bases at or above 41/20 lose on holding cost alone: the best offset
  // gives V_H = 2(sqrt(B)-1)/lnB, increasing in B and above the optimum
  // from the cap on.
  {
    const double cap = 41.0 / 20.0;
    const double at_cap = 2.0 * (std::sqrt(cap) - 1.0) / std::log(cap);
    bool increasing = true;
    double prev = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      const double B = cap + (8.0 - cap) * i / 1000.0;
      const double v = 2.0 * (std::sqrt(B) - 1.0) / std::log(B);
      increasing = increasing && v > prev;
      prev = v;
      worst = std::min(worst, v);
    }
    r.checks.push_back({"expansion cap",
                        at_cap > r.claimed_value && increasing &&
                            worst >= at_cap - kTol,
                        at_cap, r.claimed_value, "2(sqrt(B)-1)/lnB at 41/20"});
  }

  // The secondary phase wraps around the base: its top element folds next
  // to the primary anchor and contributes finite overlap terms the paired
  // formula omits. The exact coefficient is therefore lower for every
  // subdivided base; rows pushed under the paired floor must be covered by
  // their holding coefficient.
  {
    std::ostringstream os;
    os << below_floor << " rows under the paired floor";
    r.checks.push_back({"secondary wrap", wrap_gap > kTol &&
                                              below_floor_benign,
                        wrap_gap, 0.0, os.str()});
  }

  finalize(r);
  return r;
}

}  // namespace rcjrp
