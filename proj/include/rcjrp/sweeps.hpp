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

#include <cstddef>
#include <string>
#include <vector>

#include "rcjrp/rational.hpp"

namespace rcjrp {

/// One evaluated configuration: base pair (m, k), offset alpha (1 for the
/// plain-grid families), the joint-order and holding coefficients, and the
/// larger of the two.
struct SweepEntry {
  int m = 0;
  int k = 0;
  Rational alpha{1};
  double v_joint = 0.0;
  double v_hold = 0.0;
  double value = 0.0;
};

/// A named side condition confirmed alongside a sweep. observed and
/// reference are the two quantities compared; detail carries a short
/// free-form note when a scalar pair does not tell the whole story.
struct SweepCheck {
  std::string name;
  bool ok = false;
  double observed = 0.0;
  double reference = 0.0;
  std::string detail;
};

/// Exhaustive scan of one family's coefficient surface over a configuration
/// grid. entries holds every evaluated configuration in iteration order;
/// argmin indexes the first minimizer of value. Pairs (m, k) whose radical
/// reduces, such as (4, 2), generate the same grid as the reduced pair and
/// are skipped rather than listed twice.
struct SweepReport {
  std::string family;
  std::vector<SweepEntry> entries;
  std::size_t argmin = 0;
  double min_value = 0.0;
  double claimed_value = 0.0;  // closed-form optimum the scan confirms
  double margin = 0.0;         // min_value - claimed_value
  std::vector<SweepCheck> checks;
  bool ok = false;  // argmin invariant and every check passed

  const SweepEntry& best() const { return entries[argmin]; }
  const SweepCheck* check(const std::string& name) const;
};

/// Static family: V_J = (1 - 1/m) / (B - 1), V_H = B over the integer grid
/// m in [2, m_max], k in [1, k_max]. The minimum is max-coefficient sqrt(2)
/// at (2, 2). Also solves for the continuous-k minimizer at m = 2.
/// Requires m_max >= 3 and k_max >= 4.
SweepReport sweep_static(int m_max, int k_max);

/// Shift-averaged family: V_J = (1 - 1/m) / ln B, V_H = (B - 1) / ln B.
/// The minimum is 2(sqrt(3) - 1)/ln 3 at (3, 2). Reports the threshold on
/// ln(m)/k below which the holding coefficient stays under the optimum, and
/// confirms the exclusion of every other base numerically.
/// Requires m_max >= 3 and k_max >= 4.
SweepReport sweep_shifted(int m_max, int k_max);

/// Two-phase interleaved family over m in [2, 8], k in [1, 4], and reduced
/// rational offsets alpha = p/q in (1, m^(1/k)) with p <= 50. The minimum
/// is 5/(6 ln 2), attained at (2, 1, 3/2) and (2, 1, 4/3) with equal
/// coefficients. Side checks cover the parity closed forms for base-2
/// offsets, lower bounds for offsets commensurable with grid powers, and
/// the holding-cost floors that rule out large expansion factors.
/// alpha_samples is the minimum number of offsets the enumeration must
/// visit; requires at least that many to be available under the cap.
SweepReport sweep_interleaved(int alpha_samples);

}  // namespace rcjrp
