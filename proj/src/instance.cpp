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

#include "rcjrp/instance.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rcjrp/util.hpp"

namespace rcjrp {

namespace {

using ordered_json = nlohmann::ordered_json;

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform_unit(rng) * std::log(hi / lo));
}

double read_real(const ordered_json& v, const std::string& field) {
  if (v.is_string()) return parse_double(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument("instance parse: field '" + field +
                              "' is not a number");
}

}  // namespace

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };
  if (instance.commodities.empty()) flag("n must be at least 1");
  if (!finite_pos(instance.joint_cost)) flag("K0 must be strictly positive");
  for (int i = 0; i < instance.n(); ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    if (!finite_nonneg(c.order_cost)) {
      flag("K_" + std::to_string(i + 1) + " must be nonnegative");
    }
    if (!finite_pos(c.holding_cost)) {
      flag("H_" + std::to_string(i + 1) + " must be strictly positive");
    }
  }
  for (int d = 0; d < instance.resources(); ++d) {
    const auto& row = instance.resource_use[static_cast<std::size_t>(d)];
    if (static_cast<int>(row.size()) != instance.n()) {
      flag("alpha row " + std::to_string(d + 1) + " has wrong length");
      continue;
    }
    bool any_positive = false;
    for (int i = 0; i < instance.n(); ++i) {
      double a = row[static_cast<std::size_t>(i)];
      if (!finite_nonneg(a)) {
        flag("alpha_" + std::to_string(d + 1) + "," + std::to_string(i + 1) +
             " must be nonnegative");
      } else if (a > 0.0) {
        any_positive = true;
      }
    }
    if (!any_positive) {
      flag("alpha row " + std::to_string(d + 1) +
           " is vacuous: no strictly positive entry");
    }
  }
  if (!instance.capacities_raw.empty()) {
    if (static_cast<int>(instance.capacities_raw.size()) !=
        instance.resources()) {
      flag("capacities_raw has wrong length");
    } else {
      for (double b : instance.capacities_raw) {
        if (!finite_pos(b)) {
          flag("raw capacities must be strictly positive");
          break;
        }
      }
    }
  }
  return report;
}

Instance generate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be positive");
  if (spec.resources < 0) {
    throw std::invalid_argument("generate: resource count must be nonnegative");
  }
  auto check_range = [](double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi >= lo)) {
      throw std::invalid_argument(std::string("generate: bad bounds for ") +
                                  what);
    }
  };
  check_range(spec.joint_cost_lo, spec.joint_cost_hi, "K0");
  check_range(spec.order_cost_lo, spec.order_cost_hi, "K");
  check_range(spec.holding_cost_lo, spec.holding_cost_hi, "H");
  check_range(spec.alpha_lo, spec.alpha_hi, "alpha");
  if (spec.alpha_density < 0.0 || spec.alpha_density > 1.0 ||
      spec.zero_order_cost_fraction < 0.0 ||
      spec.zero_order_cost_fraction > 1.0) {
    throw std::invalid_argument("generate: fractions must lie in [0, 1]");
  }

  std::mt19937_64 rng(spec.seed);
  Instance out;
  out.joint_cost = log_uniform(rng, spec.joint_cost_lo, spec.joint_cost_hi);
  out.commodities.resize(static_cast<std::size_t>(spec.n));
  for (Commodity& c : out.commodities) {
    c.order_cost = uniform_unit(rng) < spec.zero_order_cost_fraction
                       ? 0.0
                       : log_uniform(rng, spec.order_cost_lo, spec.order_cost_hi);
    c.holding_cost =
        log_uniform(rng, spec.holding_cost_lo, spec.holding_cost_hi);
  }
  out.resource_use.resize(static_cast<std::size_t>(spec.resources));
  for (auto& row : out.resource_use) {
    row.assign(static_cast<std::size_t>(spec.n), 0.0);
    for (double& a : row) {
      if (uniform_unit(rng) < spec.alpha_density) {
        a = log_uniform(rng, spec.alpha_lo, spec.alpha_hi);
      }
    }
    bool any = false;
    for (double a : row) any = any || a > 0.0;
    if (!any) {
      std::size_t i = static_cast<std::size_t>(rng() % out.commodities.size());
      row[i] = log_uniform(rng, spec.alpha_lo, spec.alpha_hi);
    }
  }
  return out;
}

std::string instance_to_json(const Instance& instance) {
  ordered_json doc;
  doc["n"] = instance.n();
  doc["D"] = instance.resources();
  doc["K0"] = format_double(instance.joint_cost);
  doc["commodities"] = ordered_json::array();
  for (const Commodity& c : instance.commodities) {
    ordered_json row;
    row["K"] = format_double(c.order_cost);
    row["H"] = format_double(c.holding_cost);
    doc["commodities"].push_back(row);
  }
  doc["alpha"] = ordered_json::array();
  for (const auto& row : instance.resource_use) {
    ordered_json r = ordered_json::array();
    for (double a : row) r.push_back(format_double(a));
    doc["alpha"].push_back(r);
  }
  if (!instance.capacities_raw.empty()) {
    ordered_json caps = ordered_json::array();
    for (double b : instance.capacities_raw) caps.push_back(format_double(b));
    doc["meta"]["capacities_raw"] = caps;
  }
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance parse: ") + e.what());
  }
  auto require = [&](const char* key) -> const ordered_json& {
    if (!doc.contains(key)) {
      throw std::invalid_argument(std::string("instance parse: missing '") +
                                  key + "'");
    }
    return doc[key];
  };
  Instance out;
  const ordered_json& jn = require("n");
  const ordered_json& jd = require("D");
  if (!jn.is_number_integer() || !jd.is_number_integer()) {
    throw std::invalid_argument("instance parse: n and D must be integers");
  }
  int n = jn.get<int>();
  int d_count = jd.get<int>();
  out.joint_cost = read_real(require("K0"), "K0");
  const ordered_json& coms = require("commodities");
  if (!coms.is_array() || static_cast<int>(coms.size()) != n) {
    throw std::invalid_argument(
        "instance parse: commodities must be an array of length n");
  }
  for (const auto& c : coms) {
    if (!c.is_object() || !c.contains("K") || !c.contains("H")) {
      throw std::invalid_argument(
          "instance parse: commodity entries need fields K and H");
    }
    out.commodities.push_back(
        {read_real(c["K"], "K"), read_real(c["H"], "H")});
  }
  const ordered_json& alpha = require("alpha");
  if (!alpha.is_array() || static_cast<int>(alpha.size()) != d_count) {
    throw std::invalid_argument(
        "instance parse: alpha must be an array of D rows");
  }
  for (const auto& jrow : alpha) {
    if (!jrow.is_array() || static_cast<int>(jrow.size()) != n) {
      throw std::invalid_argument("instance parse: alpha rows must have n entries");
    }
    std::vector<double> row;
    for (const auto& v : jrow) row.push_back(read_real(v, "alpha"));
    out.resource_use.push_back(std::move(row));
  }
  // Raw capacity rows are normalized on ingestion and recorded in meta.
  if (doc.contains("capacities")) {
    const ordered_json& caps = doc["capacities"];
    if (!caps.is_array() || static_cast<int>(caps.size()) != d_count) {
      throw std::invalid_argument(
          "instance parse: capacities must be an array of D entries");
    }
    for (const auto& v : caps) {
      out.capacities_raw.push_back(read_real(v, "capacities"));
    }
    for (int d = 0; d < d_count; ++d) {
      double b = out.capacities_raw[static_cast<std::size_t>(d)];
      if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument(
            "instance parse: capacities must be strictly positive");
      }
      for (double& a : out.resource_use[static_cast<std::size_t>(d)]) a /= b;
    }
  } else if (doc.contains("meta") && doc["meta"].contains("capacities_raw")) {
    for (const auto& v : doc["meta"]["capacities_raw"]) {
      out.capacities_raw.push_back(read_real(v, "capacities_raw"));
    }
  }
  ValidationReport report = validate(out);
  if (!report.ok()) {
    std::string msg = "instance parse: invalid instance:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return out;
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << instance_to_json(instance);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Instance read_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return instance_from_json(ss.str());
}

}  // namespace rcjrp
