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

#include "rcjrp/simulate.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <stdexcept>

namespace rcjrp {

namespace {

struct ExactEntry {
  double key;
  int cls;
  Rational nq;
  std::size_t source;
  long long n;
};

struct ExactEntryGreater {
  bool operator()(const ExactEntry& a, const ExactEntry& b) const {
    return a.key > b.key;
  }
};

}  // namespace

long long count_joint_epochs(const GridBase& base,
                             const std::vector<ScaledPower>& multipliers,
                             double scale, double delta) {
  if (!(scale > 0.0) || !(delta >= 0.0)) {
    throw std::invalid_argument("count_joint_epochs: bad scale or horizon");
  }
  // Residue-class factors; keys for equal rationals within a class are
  // computed through the identical product so they compare bitwise equal.
  std::vector<double> class_factor(base.k);
  for (int p = 0; p < base.k; ++p) {
    class_factor[p] =
        std::pow(static_cast<double>(base.m),
                 static_cast<double>(p) / base.k) *
        scale;
  }
  std::priority_queue<ExactEntry, std::vector<ExactEntry>, ExactEntryGreater>
      heap;
  for (std::size_t u = 0; u < multipliers.size(); ++u) {
    const ScaledPower& s = multipliers[u];
    if (s.p < 0 || s.p >= base.k || !s.q.positive()) {
      throw std::invalid_argument("count_joint_epochs: bad multiplier");
    }
    Rational nq = s.q;
    double key = nq.to_double() * class_factor[s.p];
    if (key <= delta) heap.push({key, s.p, nq, u, 1});
  }
  long long count = multipliers.empty() ? 0 : 1;  // epoch 0, shared by all
  std::vector<std::optional<Rational>> last(base.k);
  while (!heap.empty()) {
    ExactEntry e = heap.top();
    heap.pop();
    if (!last[e.cls] || *last[e.cls] != e.nq) {
      ++count;
      last[e.cls] = e.nq;
    }
    const ScaledPower& s = multipliers[e.source];
    long long n = e.n + 1;
    Rational nq = s.q * Rational(n);
    double key = nq.to_double() * class_factor[s.p];
    if (key <= delta) heap.push({key, s.p, nq, e.source, n});
  }
  return count;
}

long long count_joint_epochs(const DensitySupport& support,
                             const GridBase& base, double delta) {
  return count_joint_epochs(base, support.multipliers, support.scale, delta);
}

long long count_joint_epochs(const std::vector<double>& periods, double delta,
                             double rel_tol) {
  struct Entry {
    double key;
    std::size_t source;
    long long n;
    bool operator>(const Entry& o) const { return key > o.key; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (!(periods[i] > 0.0)) {
      throw std::invalid_argument("count_joint_epochs: period must be positive");
    }
    if (periods[i] <= delta) heap.push({periods[i], i, 1});
  }
  long long count = periods.empty() ? 0 : 1;
  double last = 0.0;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (e.key - last > rel_tol * e.key) {
      ++count;
      last = e.key;
    }
    long long n = e.n + 1;
    double key = static_cast<double>(n) * periods[e.source];
    if (key <= delta) heap.push({key, e.source, n});
  }
  return count;
}

MonteCarloStats monte_carlo_theta(const std::function<double(double)>& fn,
                                  long long samples, std::uint64_t seed) {
  if (samples <= 0) {
    throw std::invalid_argument("monte_carlo_theta: need at least one sample");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double mean = 0.0;
  double m2 = 0.0;
  for (long long i = 1; i <= samples; ++i) {
    double theta = 1.0 - unit(rng);  // uniform on (0, 1]
    double x = fn(theta);
    double d = x - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (x - mean);
  }
  MonteCarloStats out;
  out.mean = mean;
  out.samples = samples;
  if (samples > 1) {
    out.std_error = std::sqrt(
        m2 / (static_cast<double>(samples) * (static_cast<double>(samples) - 1)));
  }
  return out;
}

}  // namespace rcjrp
