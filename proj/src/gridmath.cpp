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

#include "rcjrp/gridmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcjrp {

namespace {

// Splits p = a*k + r with 0 <= r < k.
void floor_divmod(long long p, int k, long long& a, int& r) {
  a = p / k;
  long long rem = p % k;
  if (rem < 0) {
    rem += k;
    a -= 1;
  }
  r = static_cast<int>(rem);
}

Rational fold_power(const Rational& q, long long a, int m) {
  if (a == 0) return q;
  if (a > 0) return q * Rational(checked_ipow(m, static_cast<int>(a)));
  return q * Rational(1, checked_ipow(m, static_cast<int>(-a)));
}

}  // namespace

GridBase GridBase::make(int m, int k) {
  if (m < 2 || k < 1) {
    throw std::invalid_argument("grid base requires m >= 2 and k >= 1");
  }
  // Express the radical over the smallest integer base: find the largest g
  // with m = c^g, then cancel gcd(g, k).
  int g = 1;
  long long c = m;
  for (int gg = 30; gg >= 2; --gg) {
    long long cand = std::llround(std::pow(static_cast<double>(m), 1.0 / gg));
    for (long long cc = std::max<long long>(2, cand - 1); cc <= cand + 1; ++cc) {
      long long pw = 1;
      bool over = false;
      for (int i = 0; i < gg; ++i) {
        pw *= cc;
        if (pw > m) {
          over = true;
          break;
        }
      }
      if (!over && pw == m) {
        g = gg;
        c = cc;
        break;
      }
    }
    if (g > 1) break;
  }
  int t = std::gcd(g, k);
  GridBase b;
  b.m = static_cast<int>(checked_ipow(c, g / t));
  b.k = k / t;
  return b;
}

double GridBase::root() const {
  return std::pow(static_cast<double>(m), 1.0 / k);
}

ScaledPower GridBase::canonical(Rational q, long long p) const {
  long long a;
  int r;
  floor_divmod(p, k, a, r);
  return ScaledPower{fold_power(q, a, m), r};
}

double GridBase::value(const ScaledPower& s) const {
  double radical = s.p == 0 ? 1.0
                            : std::pow(static_cast<double>(m),
                                       static_cast<double>(s.p) / k);
  return s.q.to_double() * radical;
}

void ExactSum::add(long long p, const Rational& coeff) {
  long long a;
  int r;
  floor_divmod(p, base_.k, a, r);
  Rational c = fold_power(coeff, a, base_.m);
  auto it = terms_.find(r);
  if (it == terms_.end()) {
    terms_.emplace(r, c);
  } else {
    it->second += c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

double ExactSum::to_double() const {
  double total = 0.0;
  for (const auto& [p, c] : terms_) {
    total += c.to_double() * (p == 0 ? 1.0
                                     : std::pow(static_cast<double>(base_.m),
                                                static_cast<double>(p) / base_.k));
  }
  return total;
}

Rational ExactSum::coeff(int p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiplierSet::add(const ScaledPower& s) {
  if (!s.q.positive()) {
    throw std::invalid_argument("multiplier set elements must be positive");
  }
  if (std::find(elems_.begin(), elems_.end(), s) == elems_.end()) {
    elems_.push_back(s);
  }
}

std::optional<ScaledPower> lcm_scaled(const MultiplierSet& set) {
  const auto& es = set.elements();
  if (es.empty()) throw std::invalid_argument("lcm of empty set");
  Rational l = es[0].q;
  for (std::size_t i = 1; i < es.size(); ++i) {
    if (es[i].p != es[0].p) return std::nullopt;
    l = Rational::lcm(l, es[i].q);
  }
  return ScaledPower{l, es[0].p};
}

ExactSum inclusion_exclusion_sum(const MultiplierSet& set) {
  if (set.size() > 24) {
    throw std::invalid_argument("inclusion-exclusion limited to 24 elements");
  }
  ExactSum out(set.base());
  std::map<int, std::vector<Rational>> classes;
  for (const auto& e : set.elements()) classes[e.p].push_back(e.q);
  // Subsets mixing residue classes have no finite common multiple and drop
  // out, so the sum decomposes per class.
  for (const auto& [p, qs] : classes) {
    const unsigned n = static_cast<unsigned>(qs.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Rational l(0);
      bool first = true;
      for (unsigned i = 0; i < n; ++i) {
        if (mask >> i & 1u) {
          l = first ? qs[i] : Rational::lcm(l, qs[i]);
          first = false;
        }
      }
      Rational term = Rational(1) / l;
      if (std::popcount(mask) % 2 == 0) term = -term;
      out.add(-p, term);
    }
  }
  return out;
}

GridConfig GridConfig::make(int m, int k, Rational alpha,
                            std::optional<double> theta, double anchor) {
  GridConfig c;
  c.base = GridBase::make(m, k);
  if (!(anchor > 0.0) || !std::isfinite(anchor)) {
    throw std::invalid_argument("grid anchor must be positive and finite");
  }
  c.anchor = anchor;
  if (theta && (!(*theta >= 0.0) || !(*theta <= 1.0))) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  c.theta = theta;
  if (!alpha.positive()) throw std::invalid_argument("alpha must be positive");
  if (alpha != Rational(1)) {
    if (alpha < Rational(1)) {
      throw std::invalid_argument("alpha must be at least 1");
    }
    // Require alpha < m^(1/k) exactly: alpha^k < m.
    Rational pk(1);
    for (int i = 0; i < c.base.k; ++i) pk *= alpha;
    if (!(pk < Rational(c.base.m))) {
      throw std::invalid_argument("alpha must be below m^(1/k)");
    }
  }
  c.alpha = alpha;
  return c;
}

double GridConfig::beta() const {
  if (!interleaved()) return 0.0;
  return base.k * std::log(alpha.to_double()) /
         std::log(static_cast<double>(base.m));
}

GridConfig GridConfig::with_theta(double t) const {
  GridConfig c = *this;
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  c.theta = t;
  return c;
}

GridPoint round_up(const GridConfig& config, double t) {
  if (!config.theta) {
    throw std::invalid_argument("round_up requires a concrete theta");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("round_up requires t > 0");
  }
  const double theta = *config.theta;
  const GridBase& gb = config.base;
  const double lnB = std::log(static_cast<double>(gb.m)) / gb.k;
  const double scale =
      config.anchor * std::pow(static_cast<double>(gb.m), theta / gb.k);

  auto successor = [&](const Rational& q) {
    // Smallest integer p with q * B^(p + theta) * anchor > t, found by a
    // guarded scan around the float estimate so the strict comparison is
    // always taken against actual candidate values.
    double x =
        (std::log(t / config.anchor) - std::log(q.to_double())) / lnB - theta;
    long long p = static_cast<long long>(std::floor(x)) - 1;
    ScaledPower sp = gb.canonical(q, p);
    double v = gb.value(sp) * scale;
    int guard = 0;
    while (!(v > t) && guard++ < 8) {
      ++p;
      sp = gb.canonical(q, p);
      v = gb.value(sp) * scale;
    }
    return GridPoint{sp, v};
  };

  GridPoint primary = successor(Rational(1));
  if (!config.interleaved()) return primary;
  GridPoint secondary = successor(config.alpha);
  return secondary.value < primary.value ? secondary : primary;
}

MultiplierSet base_multipliers(const GridConfig& config) {
  MultiplierSet s(config.base);
  for (int kappa = 1; kappa <= config.base.k; ++kappa) {
    s.add(Rational(1), kappa - 1);
  }
  return s;
}

MultiplierSet primary_multipliers(const GridConfig& config) {
  MultiplierSet s = base_multipliers(config);
  for (int kappa = 1; kappa <= config.base.k; ++kappa) {
    s.add(config.alpha, kappa - 1);
  }
  return s;
}

MultiplierSet secondary_multipliers(const GridConfig& config) {
  MultiplierSet s = base_multipliers(config);
  for (int kappa = 1; kappa <= config.base.k; ++kappa) {
    s.add(Rational(1) / config.alpha, kappa);
  }
  return s;
}

DensitySupport density_support(const GridConfig& config) {
  const GridBase& gb = config.base;
  DensitySupport out;
  if (!config.theta) {
    if (config.interleaved()) {
      throw std::invalid_argument("density support requires a concrete theta");
    }
    out.multipliers = base_multipliers(config).elements();
    out.scale = config.anchor * config.root();
    return out;
  }
  const double theta = *config.theta;
  if (!config.interleaved()) {
    out.multipliers = base_multipliers(config).elements();
    out.scale =
        config.anchor * std::pow(static_cast<double>(gb.m), theta / gb.k);
    return out;
  }
  const double b = config.beta();
  if (theta <= 1.0 - b) {
    out.multipliers = primary_multipliers(config).elements();
    out.scale =
        config.anchor * std::pow(static_cast<double>(gb.m), theta / gb.k);
  } else {
    out.multipliers = secondary_multipliers(config).elements();
    out.scale = config.anchor *
                std::pow(static_cast<double>(gb.m), (b - 1.0 + theta) / gb.k);
  }
  return out;
}

double density_static(const GridConfig& config) {
  if (config.interleaved()) {
    throw std::invalid_argument("static density is defined for alpha == 1");
  }
  return inclusion_exclusion_sum(base_multipliers(config)).to_double() /
         (config.root() * config.anchor);
}

double density_interleaved(const GridConfig& config) {
  if (!config.theta) {
    throw std::invalid_argument("density requires a concrete theta");
  }
  DensitySupport sup = density_support(config);
  MultiplierSet s(config.base);
  for (const auto& e : sup.multipliers) s.add(e);
  return inclusion_exclusion_sum(s).to_double() / sup.scale;
}

double expected_round(const GridConfig& config, double t) {
  const double B = config.root();
  const double a = config.alpha.to_double();
  return (a + B / a - 2.0) / std::log(B) * t;
}

double expected_recip_round(const GridConfig& config, double t) {
  const double B = config.root();
  const double a = config.alpha.to_double();
  return (2.0 - 1.0 / a - a / B) / std::log(B) / t;
}

double expected_density(const GridConfig& config) {
  const double B = config.root();
  const double lnB = std::log(B);
  const double a = config.alpha.to_double();
  const double sum_prim =
      inclusion_exclusion_sum(primary_multipliers(config)).to_double();
  double total = (1.0 - a / B) * sum_prim;
  if (config.interleaved()) {
    const double sum_sec =
        inclusion_exclusion_sum(secondary_multipliers(config)).to_double();
    total += (1.0 - 1.0 / a) * sum_sec;
  }
  return total / lnB / config.anchor;
}

CostMultipliers multipliers_static(const GridConfig& config) {
  if (config.interleaved()) {
    throw std::invalid_argument("static multipliers are defined for alpha == 1");
  }
  const double B = config.root();
  const double ie =
      inclusion_exclusion_sum(base_multipliers(config)).to_double();
  return CostMultipliers{ie / B, 1.0, B};
}

CostMultipliers multipliers_shifted(const GridConfig& config) {
  if (config.interleaved()) {
    throw std::invalid_argument("shifted multipliers are defined for alpha == 1");
  }
  const double B = config.root();
  const double lnB = std::log(B);
  const double ie =
      inclusion_exclusion_sum(base_multipliers(config)).to_double();
  const double c = (B - 1.0) / (B * lnB);
  return CostMultipliers{c * ie, c, (B - 1.0) / lnB};
}

CostMultipliers multipliers_interleaved(const GridConfig& config) {
  if (!config.interleaved()) return multipliers_shifted(config);
  const double B = config.root();
  const double lnB = std::log(B);
  const double a = config.alpha.to_double();
  const double sum_prim =
      inclusion_exclusion_sum(primary_multipliers(config)).to_double();
  const double sum_sec =
      inclusion_exclusion_sum(secondary_multipliers(config)).to_double();
  return CostMultipliers{
      ((1.0 - a / B) * sum_prim + (1.0 - 1.0 / a) * sum_sec) / lnB,
      (2.0 - 1.0 / a - a / B) / lnB,
      (a + B / a - 2.0) / lnB};
}

CostMultipliers multipliers(const GridConfig& config) {
  if (config.theta.has_value()) {
    if (config.interleaved()) {
      throw std::invalid_argument(
          "fixed-shift multipliers are defined for plain grids only");
    }
    return multipliers_static(config);
  }
  return config.interleaved() ? multipliers_interleaved(config)
                              : multipliers_shifted(config);
}

namespace {

Rational rational_ie(const MultiplierSet& set) {
  if (set.base().k != 1) {
    throw std::invalid_argument("exact rational sums require a rational root");
  }
  ExactSum s = inclusion_exclusion_sum(set);
  return s.coeff(0);
}

}  // namespace

Rational interleaved_sum_primary_rational(const GridConfig& config) {
  return rational_ie(primary_multipliers(config));
}

Rational interleaved_sum_secondary_rational(const GridConfig& config) {
  return rational_ie(secondary_multipliers(config));
}

}  // namespace rcjrp
