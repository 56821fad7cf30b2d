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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcjrp/factor_lp.hpp"
#include "rcjrp/gridmath.hpp"
#include "rcjrp/instance.hpp"
#include "rcjrp/policy.hpp"
#include "rcjrp/rational.hpp"
#include "rcjrp/relaxation.hpp"
#include "rcjrp/reproduce.hpp"
#include "rcjrp/simulate.hpp"
#include "rcjrp/sweeps.hpp"
#include "rcjrp/util.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace rcjrp;

constexpr const char* kToolVersion = "0.1.0";

std::string digest_hex(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Every output document carries the run manifest: the command, its full
// argument list, the seeds in play, the tool version, digests of the files
// read, and a digest of the numeric payload itself. Reruns with an equal
// manifest reproduce the payload byte for byte.
struct RunContext {
  std::string command;
  std::vector<std::string> arguments;
  ordered_json seeds = ordered_json::object();
  ordered_json inputs = ordered_json::object();

  std::string load_input(const std::string& path) {
    std::string bytes = slurp(path);
    inputs[path] = digest_hex(bytes);
    return bytes;
  }

  ordered_json wrap(ordered_json payload) const {
    ordered_json manifest;
    manifest["command"] = command;
    manifest["arguments"] = arguments;
    manifest["seeds"] = seeds;
    manifest["tool_version"] = kToolVersion;
    manifest["inputs"] = inputs;
    manifest["payload_digest"] = digest_hex(payload.dump());
    payload["manifest"] = std::move(manifest);
    return payload;
  }

  void emit(const std::string& out_path, ordered_json payload) const {
    const std::string text = wrap(std::move(payload)).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + out_path);
    std::cout << "wrote " << out_path << "\n";
  }
};

double jreal(const ordered_json& v, const char* field) {
  if (v.is_string()) return parse_double(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw std::runtime_error(std::string("field '") + field +
                           "' is not a number");
}

const ordered_json& jfield(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::runtime_error(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

ordered_json solution_to_json(const RelaxedSolution& sol) {
  ordered_json doc;
  doc["t_min"] = format_double(sol.t_min);
  doc["periods"] = ordered_json::array();
  for (double t : sol.periods) doc["periods"].push_back(format_double(t));
  doc["objective"] = format_double(sol.objective);
  doc["kkt_residual"] = format_double(sol.kkt_residual);
  doc["active_resources"] = sol.active_resources;
  doc["converged"] = sol.converged;
  doc["iterations"] = sol.iterations;
  return doc;
}

RelaxedSolution solution_from_json(const ordered_json& doc) {
  RelaxedSolution sol;
  sol.t_min = jreal(jfield(doc, "t_min"), "t_min");
  for (const auto& v : jfield(doc, "periods")) {
    sol.periods.push_back(jreal(v, "periods"));
  }
  sol.objective = jreal(jfield(doc, "objective"), "objective");
  sol.kkt_residual = jreal(jfield(doc, "kkt_residual"), "kkt_residual");
  for (const auto& v : jfield(doc, "active_resources")) {
    sol.active_resources.push_back(v.get<int>());
  }
  sol.converged = jfield(doc, "converged").get<bool>();
  sol.iterations = jfield(doc, "iterations").get<int>();
  return sol;
}

ordered_json config_to_json(const GridConfig& config) {
  ordered_json doc;
  doc["m"] = config.base.m;
  doc["k"] = config.base.k;
  doc["alpha"] = config.alpha.str();
  if (config.theta.has_value()) {
    doc["theta"] = format_double(*config.theta);
  } else {
    doc["theta"] = nullptr;
  }
  doc["anchor"] = format_double(config.anchor);
  return doc;
}

GridConfig config_from_json(const ordered_json& doc) {
  std::optional<double> theta;
  const ordered_json& jt = jfield(doc, "theta");
  if (!jt.is_null()) theta = jreal(jt, "theta");
  return GridConfig::make(jfield(doc, "m").get<int>(),
                          jfield(doc, "k").get<int>(),
                          Rational::from_string(
                              jfield(doc, "alpha").get<std::string>()),
                          theta, jreal(jfield(doc, "anchor"), "anchor"));
}

ordered_json policy_to_json(const std::string& family, const Policy& policy,
                            std::optional<double> relax_objective,
                            std::optional<double> derand_theta) {
  ordered_json doc;
  doc["family"] = family;
  doc["config"] = config_to_json(policy.config);
  doc["intervals"] = ordered_json::array();
  for (double t : policy.intervals) doc["intervals"].push_back(format_double(t));
  doc["indices"] = ordered_json::array();
  for (const ScaledPower& s : policy.indices) {
    ordered_json idx;
    idx["q"] = s.q.str();
    idx["p"] = s.p;
    doc["indices"].push_back(idx);
  }
  doc["provenance"] = policy.provenance;
  if (relax_objective) {
    doc["relaxation_objective"] = format_double(*relax_objective);
  }
  if (derand_theta) doc["derandomized_theta"] = format_double(*derand_theta);
  return doc;
}

Policy policy_from_json(const ordered_json& doc,
                        std::optional<double>* relax_objective) {
  Policy policy;
  policy.config = config_from_json(jfield(doc, "config"));
  for (const auto& v : jfield(doc, "intervals")) {
    policy.intervals.push_back(jreal(v, "intervals"));
  }
  for (const auto& idx : jfield(doc, "indices")) {
    policy.indices.push_back(
        {Rational::from_string(jfield(idx, "q").get<std::string>()),
         jfield(idx, "p").get<int>()});
  }
  if (policy.indices.size() != policy.intervals.size()) {
    throw std::runtime_error("policy file: intervals and indices disagree");
  }
  if (!policy.config.theta.has_value()) {
    throw std::runtime_error("policy file: config must carry a concrete theta");
  }
  const double shift =
      std::pow(policy.config.base.m,
               *policy.config.theta / policy.config.base.k) *
      policy.config.anchor;
  for (std::size_t i = 0; i < policy.intervals.size(); ++i) {
    const double expect = policy.config.base.value(policy.indices[i]) * shift;
    if (!(std::abs(policy.intervals[i] - expect) <=
          1e-9 * std::max(1.0, std::abs(expect)))) {
      throw std::runtime_error("policy file: interval " + std::to_string(i) +
                               " does not match its grid index");
    }
  }
  if (doc.contains("provenance")) {
    policy.provenance = doc["provenance"].get<std::string>();
  }
  if (relax_objective) {
    *relax_objective = std::nullopt;
    if (doc.contains("relaxation_objective")) {
      *relax_objective =
          jreal(doc["relaxation_objective"], "relaxation_objective");
    }
  }
  return policy;
}

ordered_json sweep_to_json(const SweepReport& report) {
  ordered_json doc;
  doc["family"] = report.family;
  const SweepEntry& best = report.entries[static_cast<std::size_t>(
      report.argmin)];
  doc["argmin"]["m"] = best.m;
  doc["argmin"]["k"] = best.k;
  doc["argmin"]["alpha"] = best.alpha.str();
  doc["min_value"] = format_double(report.min_value);
  doc["claimed_value"] = format_double(report.claimed_value);
  doc["margin"] = format_double(report.margin);
  doc["ok"] = report.ok;
  doc["checks"] = ordered_json::array();
  for (const SweepCheck& c : report.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["ok"] = c.ok;
    jc["observed"] = format_double(c.observed);
    jc["reference"] = format_double(c.reference);
    jc["detail"] = c.detail;
    doc["checks"].push_back(jc);
  }
  doc["entries"] = ordered_json::array();
  for (const SweepEntry& e : report.entries) {
    ordered_json je;
    je["m"] = e.m;
    je["k"] = e.k;
    je["alpha"] = e.alpha.str();
    je["v_joint"] = format_double(e.v_joint);
    je["v_hold"] = format_double(e.v_hold);
    je["value"] = format_double(e.value);
    doc["entries"].push_back(je);
  }
  return doc;
}

struct GenerateArgs {
  std::uint64_t seed = 1;
  int n = 8;
  int resources = 2;
  std::string out;
};

int run_generate(RunContext& ctx, const GenerateArgs& args) {
  GeneratorSpec spec;
  spec.n = args.n;
  spec.resources = args.resources;
  spec.seed = args.seed;
  ctx.seeds["instance"] = std::to_string(args.seed);
  Instance ins = generate(spec);
  ordered_json payload = ordered_json::parse(instance_to_json(ins));
  ctx.emit(args.out, std::move(payload));
  return 0;
}

struct SolveArgs {
  std::string in;
  double tol = 1e-9;
  std::string out;
};

int run_solve(RunContext& ctx, const SolveArgs& args) {
  Instance ins = instance_from_json(ctx.load_input(args.in));
  RelaxedSolution sol = solve_relaxation(ins, args.tol);
  ctx.emit(args.out, solution_to_json(sol));
  if (!sol.converged) {
    std::cerr << "solve: relaxation did not converge (residual "
              << format_double(sol.kkt_residual) << ")\n";
    return 1;
  }
  return 0;
}

struct RoundArgs {
  std::string relax;
  std::string instance;
  std::string family = "static";
  int m = 2;
  int k = 2;
  std::string alpha = "1";
  std::optional<double> theta;
  bool do_derandomize = false;
  std::string out;
};

int run_round(RunContext& ctx, const RoundArgs& args) {
  RelaxedSolution sol =
      solution_from_json(ordered_json::parse(ctx.load_input(args.relax)));
  const Rational alpha = Rational::from_string(args.alpha);
  const bool interleaved = !(alpha == Rational(1));
  if (interleaved != (args.family == "interleaved")) {
    throw std::runtime_error(
        "round: alpha > 1 exactly when the family is interleaved");
  }
  if (args.do_derandomize && args.theta.has_value()) {
    throw std::runtime_error("round: pass either --theta or --derandomize");
  }

  if (args.do_derandomize) {
    if (args.instance.empty()) {
      throw std::runtime_error("round: --derandomize needs --instance");
    }
    Instance ins = instance_from_json(ctx.load_input(args.instance));
    GridConfig family_config =
        GridConfig::make(args.m, args.k, alpha, std::nullopt, sol.t_min);
    DerandomizeResult res = derandomize(sol, ins, family_config);
    ctx.emit(args.out, policy_to_json(args.family, res.policy, sol.objective,
                                      res.theta_star));
    return 0;
  }

  const double theta =
      args.theta.value_or(args.family == "static" ? 0.0 : -1.0);
  if (theta < 0.0) {
    throw std::runtime_error(
        "round: the " + args.family +
        " family needs --theta or --derandomize to fix the shift");
  }
  GridConfig config = GridConfig::make(args.m, args.k, alpha, theta, sol.t_min);
  Policy policy = build_policy(sol, config, ctx.command);
  ctx.emit(args.out,
           policy_to_json(args.family, policy, sol.objective, std::nullopt));
  return 0;
}

struct EvaluateArgs {
  std::string policy;
  std::string instance;
  double tol = 1e-9;
  std::string out;
};

int run_evaluate(RunContext& ctx, const EvaluateArgs& args) {
  std::optional<double> opt;
  Policy policy =
      policy_from_json(ordered_json::parse(ctx.load_input(args.policy)), &opt);
  Instance ins = instance_from_json(ctx.load_input(args.instance));
  if (!opt) {
    RelaxedSolution sol = solve_relaxation(ins, args.tol);
    if (!sol.converged) {
      throw std::runtime_error("evaluate: relaxation did not converge");
    }
    opt = sol.objective;
  }
  CostBreakdown cost = evaluate(policy, ins, *opt);
  ordered_json payload;
  payload["joint"] = format_double(cost.joint);
  payload["individual_ordering"] = format_double(cost.individual_ordering);
  payload["holding"] = format_double(cost.holding);
  payload["total"] = format_double(cost.total);
  payload["optimum"] = format_double(*opt);
  payload["ratio"] = format_double(cost.ratio);
  payload["exact_joint_density"] = format_double(exact_joint_density(policy));
  ctx.emit(args.out, std::move(payload));
  return 0;
}

struct SimulateArgs {
  std::string policy;
  double horizon = 1e6;
  std::string out;
};

int run_simulate(RunContext& ctx, const SimulateArgs& args) {
  if (!(args.horizon > 0.0)) {
    throw std::runtime_error("simulate: horizon must be positive");
  }
  Policy policy = policy_from_json(
      ordered_json::parse(ctx.load_input(args.policy)), nullptr);
  // Count joint epochs through the exact grid indices so coincidences are
  // resolved by arithmetic rather than floating-point comparison.
  std::vector<ScaledPower> distinct;
  for (const ScaledPower& s : policy.indices) {
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) {
      distinct.push_back(s);
    }
  }
  const double scale =
      std::pow(policy.config.base.m,
               *policy.config.theta / policy.config.base.k) *
      policy.config.anchor;
  const long long epochs = count_joint_epochs(policy.config.base, distinct,
                                              scale, args.horizon);
  const double measured = static_cast<double>(epochs) / args.horizon;
  const double exact = exact_joint_density(policy);
  ordered_json payload;
  payload["horizon"] = format_double(args.horizon);
  payload["joint_epochs"] = epochs;
  payload["measured_density"] = format_double(measured);
  payload["exact_density"] = format_double(exact);
  payload["difference"] = format_double(measured - exact);
  ctx.emit(args.out, std::move(payload));
  return 0;
}

struct OracleArgs {
  std::string quantity = "round";
  int m = 2;
  int k = 1;
  std::string alpha = "1";
  double t = 1.0;
  double anchor = 1.0;
  long long samples = 1000000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_oracle(RunContext& ctx, const OracleArgs& args) {
  GridConfig family = GridConfig::make(
      args.m, args.k, Rational::from_string(args.alpha), std::nullopt,
      args.anchor);
  double closed = 0.0;
  std::function<double(double)> fn;
  if (args.quantity == "round") {
    if (!(args.t > 0.0)) throw std::runtime_error("oracle-theta: t must be positive");
    closed = expected_round(family, args.t);
    fn = [&](double theta) {
      return round_up(family.with_theta(theta), args.t).value;
    };
  } else if (args.quantity == "recip") {
    if (!(args.t > 0.0)) throw std::runtime_error("oracle-theta: t must be positive");
    closed = expected_recip_round(family, args.t);
    fn = [&](double theta) {
      return 1.0 / round_up(family.with_theta(theta), args.t).value;
    };
  } else if (args.quantity == "density") {
    closed = expected_density(family);
    fn = [&](double theta) {
      return density_interleaved(family.with_theta(theta));
    };
  } else {
    throw std::runtime_error("oracle-theta: quantity must be round, recip, or density");
  }
  ctx.seeds["theta"] = std::to_string(args.seed);
  MonteCarloStats stats = monte_carlo_theta(fn, args.samples, args.seed);
  const double z = stats.std_error > 0.0
                       ? (stats.mean - closed) / stats.std_error
                       : 0.0;
  ordered_json payload;
  payload["quantity"] = args.quantity;
  payload["config"] = config_to_json(family);
  payload["t"] = format_double(args.t);
  payload["samples"] = stats.samples;
  payload["closed_form"] = format_double(closed);
  payload["mc_mean"] = format_double(stats.mean);
  payload["mc_std_error"] = format_double(stats.std_error);
  payload["z_score"] = format_double(z);
  ctx.emit(args.out, std::move(payload));
  if (std::abs(z) > 3.0) {
    std::cerr << "oracle-theta: sample mean sits " << format_double(std::abs(z))
              << " standard errors from the closed form\n";
    return 1;
  }
  return 0;
}

struct LpArgs {
  int classes = 200;
  int shifts = 200;
  bool full = false;
  std::string out;
};

ordered_json lp_payload(const LpModel& model, const LpSolution& sol,
                        const LpCheck& check) {
  ordered_json payload;
  payload["classes"] = model.classes;
  payload["shifts"] = model.shifts;
  payload["rho"] = format_double(sol.rho);
  payload["final_guarantee"] = format_double(
      final_guarantee(sol.rho, model.classes));
  payload["status"] =
      sol.status == LpStatus::kOptimal ? "optimal" : "iteration-cap";
  payload["activation_rounds"] = sol.activation_rounds;
  payload["simplex_pivots"] = sol.simplex_pivots;
  payload["witness"]["z"] = format_double(sol.z);
  payload["witness"]["x"] = ordered_json::array();
  for (double v : sol.x) payload["witness"]["x"].push_back(format_double(v));
  payload["witness"]["y"] = ordered_json::array();
  for (double v : sol.y) payload["witness"]["y"].push_back(format_double(v));
  payload["certificate"]["rows"] = sol.certificate_rows;
  payload["certificate"]["weights"] = ordered_json::array();
  for (double w : sol.certificate_weights) {
    payload["certificate"]["weights"].push_back(format_double(w));
  }
  payload["certificate"]["value"] = format_double(sol.certificate_value);
  payload["check"]["witness_min"] = format_double(check.witness_min);
  payload["check"]["certificate_max"] = format_double(check.certificate_max);
  payload["check"]["ok"] = check.ok;
  return payload;
}

int run_lp(RunContext& ctx, const LpArgs& args) {
  const int classes = args.full ? 2000 : args.classes;
  const int shifts = args.full ? 2000 : args.shifts;
  LpModel model = build_lp(classes, shifts);
  LpSolution sol = solve_lp(model);
  LpCheck check = check_lp_solution(model, sol);
  ctx.emit(args.out, lp_payload(model, sol, check));
  // Status goes to stderr so a bare invocation still writes a clean
  // document to stdout.
  std::cerr << "lp-bound N=" << classes << " L=" << shifts << ": rho "
            << format_double(sol.rho) << ", guarantee "
            << format_double(final_guarantee(sol.rho, classes))
            << (check.ok ? ", certificate ok" : ", CERTIFICATE FAILED") << "\n";
  return check.ok && sol.status == LpStatus::kOptimal ? 0 : 1;
}

struct VerifyArgs {
  std::string claim = "all";
  std::string out = ".";
};

int run_verify(RunContext& ctx, const VerifyArgs& args) {
  const bool all = args.claim == "all";
  if (!all && args.claim != "a1" && args.claim != "a2" &&
      args.claim != "lemma42") {
    throw std::runtime_error(
        "verify-claims: claim must be a1, a2, lemma42, or all");
  }
  std::filesystem::create_directories(args.out);
  std::vector<SweepReport> reports;
  if (all || args.claim == "a1") reports.push_back(sweep_static(10, 10));
  if (all || args.claim == "a2") reports.push_back(sweep_shifted(10, 10));
  if (all || args.claim == "lemma42") {
    reports.push_back(sweep_interleaved(1000));
  }

  bool ok = true;
  for (const SweepReport& report : reports) {
    const std::string path =
        (std::filesystem::path(args.out) / ("sweep_" + report.family + ".json"))
            .string();
    ctx.emit(path, sweep_to_json(report));
    const SweepEntry& best = report.best();
    std::printf("%-12s argmin (%d,%d,%s) value %.15f claimed %.15f %s\n",
                report.family.c_str(), best.m, best.k, best.alpha.str().c_str(),
                report.min_value, report.claimed_value,
                report.ok ? "ok" : "FAILED");
    for (const SweepCheck& c : report.checks) {
      std::printf("  %-24s %-4s observed %.15g reference %.15g%s%s\n",
                  c.name.c_str(), c.ok ? "ok" : "FAIL", c.observed, c.reference,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
    ok = ok && report.ok;
  }
  return ok ? 0 : 1;
}

struct ReproduceArgs {
  int count = 100;
  std::uint64_t seed = 1;
  int samples = 1000;
  bool full = false;
  std::string out = ".";
};

int run_reproduce_cmd(RunContext& ctx, const ReproduceArgs& args) {
  std::filesystem::create_directories(args.out);
  ctx.seeds["root"] = std::to_string(args.seed);

  ordered_json payload;
  payload["seed_count"] = args.count;
  payload["theta_samples"] = args.samples;

  payload["multiplier_table"] = ordered_json::array();
  std::printf("%-12s %-10s %-22s %-22s %-22s\n", "family", "config", "v_joint",
              "v_order", "v_hold");
  for (const MultiplierRow& row : reference_multiplier_table()) {
    ordered_json jr;
    jr["family"] = row.family;
    jr["m"] = row.m;
    jr["k"] = row.k;
    jr["alpha"] = row.alpha.str();
    jr["v_joint"] = format_double(row.values.v_joint);
    jr["v_order"] = format_double(row.values.v_order);
    jr["v_hold"] = format_double(row.values.v_hold);
    payload["multiplier_table"].push_back(jr);
    const std::string config_label =
        "(" + std::to_string(row.m) + "," + std::to_string(row.k) +
        (row.alpha == Rational(1) ? std::string() : "," + row.alpha.str()) +
        ")";
    std::printf("%-12s %-10s %.15f    %.15f    %.15f\n", row.family.c_str(),
                config_label.c_str(), row.values.v_joint, row.values.v_order,
                row.values.v_hold);
  }

  const int lp_size = args.full ? 2000 : 200;
  LpModel model = build_lp(lp_size, lp_size);
  LpSolution lp = solve_lp(model);
  LpCheck lp_check = check_lp_solution(model, lp);
  payload["lp_bound"]["classes"] = model.classes;
  payload["lp_bound"]["shifts"] = model.shifts;
  payload["lp_bound"]["rho"] = format_double(lp.rho);
  payload["lp_bound"]["final_guarantee"] =
      format_double(final_guarantee(lp.rho, model.classes));
  payload["lp_bound"]["certified"] = lp_check.ok;
  std::printf("lp bound N=L=%d: rho %.9f, guarantee %.9f, certificate %s\n",
              lp_size, lp.rho, final_guarantee(lp.rho, model.classes),
              lp_check.ok ? "ok" : "FAILED");

  ReproduceReport report = run_reproduce(args.count, args.seed, args.samples);
  payload["families"] = ordered_json::array();
  bool families_pass = true;
  if (args.count > 0) {
    std::printf("%-36s %-10s %-12s %-12s %s\n", "family", "bound", "max",
                "mean", "status");
  }
  for (const FamilySummary& f : report.families) {
    ordered_json jf;
    jf["family"] = f.family;
    jf["bound"] = format_double(f.bound);
    jf["max_ratio"] = format_double(f.max_ratio);
    jf["mean_ratio"] = format_double(f.mean_ratio);
    jf["violations"] = f.violations;
    jf["pass"] = f.pass;
    payload["families"].push_back(jf);
    families_pass = families_pass && f.pass;
    if (args.count > 0) {
      std::printf("%-36s %.6f   %.9f  %.9f  %s\n", f.family.c_str(), f.bound,
                  f.max_ratio, f.mean_ratio, f.pass ? "pass" : "FAIL");
    }
  }

  payload["instances"] = ordered_json::array();
  for (const InstanceOutcome& row : report.rows) {
    ordered_json jr;
    jr["seed"] = std::to_string(row.seed);
    jr["n"] = row.n;
    jr["D"] = row.resources;
    jr["opt"] = format_double(row.opt);
    jr["kkt_residual"] = format_double(row.kkt_residual);
    jr["slack"] = format_double(row.slack);
    jr["static_22"] = format_double(row.static_22);
    jr["static_pair_certificate"] =
        format_double(row.static_pair_certificate);
    jr["shifted_32_avg"] = format_double(row.shifted_32_avg);
    jr["shifted_pair_avg"] = format_double(row.shifted_pair_avg);
    jr["interleaved_derand"] = format_double(row.interleaved_derand);
    jr["interleaved_avg"] = format_double(row.interleaved_avg);
    jr["derand_theta"] = format_double(row.derand_theta);
    payload["instances"].push_back(jr);
  }

  std::ostringstream csv;
  csv << "instance,seed,n,D,opt,kkt_residual,family,ratio,bound,pass\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const InstanceOutcome& row = report.rows[i];
    const double ratios[] = {row.static_22, row.static_pair_certificate,
                             row.shifted_32_avg, row.shifted_pair_avg,
                             row.interleaved_derand};
    for (std::size_t f = 0; f < report.families.size(); ++f) {
      const FamilySummary& fam = report.families[f];
      csv << i << ',' << row.seed << ',' << row.n << ',' << row.resources
          << ',' << format_double(row.opt) << ','
          << format_double(row.kkt_residual) << ",\"" << fam.family << "\","
          << format_double(ratios[f]) << ',' << format_double(fam.bound) << ','
          << (ratios[f] <= fam.bound + row.slack ? "pass" : "fail") << '\n';
    }
  }
  const std::string csv_path =
      (std::filesystem::path(args.out) / "summary.csv").string();
  {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + csv_path);
    f << csv.str();
  }
  std::cout << "wrote " << csv_path << "\n";
  ctx.emit((std::filesystem::path(args.out) / "summary.json").string(),
           std::move(payload));

  return families_pass && lp_check.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resource-constrained joint replenishment toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunContext ctx;
  for (int i = 1; i < argc; ++i) ctx.arguments.push_back(argv[i]);
  int rc = 0;
  auto guard = [&](const char* name, auto fn) {
    ctx.command = name;
    try {
      rc = fn();
    } catch (const std::exception& e) {
      std::cerr << "rcjrp " << name << ": error: " << e.what() << "\n";
      rc = 1;
    }
  };

  auto* gen = app.add_subcommand("generate", "generate a random instance");
  auto gen_args = std::make_shared<GenerateArgs>();
  gen->add_option("--seed", gen_args->seed, "generator seed");
  gen->add_option("--n", gen_args->n, "number of commodities")
      ->check(CLI::PositiveNumber);
  gen->add_option("--resources,--D", gen_args->resources,
                  "number of resource rows")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_args->out, "output instance file");
  gen->callback(
      [&, gen_args] { guard("generate", [&] { return run_generate(ctx, *gen_args); }); });

  auto* solve = app.add_subcommand("solve", "solve the continuous relaxation");
  auto solve_args = std::make_shared<SolveArgs>();
  solve->add_option("--in", solve_args->in, "instance file")->required();
  solve->add_option("--tol", solve_args->tol, "first-order residual target");
  solve->add_option("--out", solve_args->out, "output solution file");
  solve->callback(
      [&, solve_args] { guard("solve", [&] { return run_solve(ctx, *solve_args); }); });

  auto* round = app.add_subcommand("round", "round a solution onto a grid");
  auto round_args = std::make_shared<RoundArgs>();
  round->add_option("--relax", round_args->relax, "relaxation solution file")
      ->required();
  round->add_option("--instance", round_args->instance,
                    "instance file (needed by --derandomize)");
  round->add_option("--family", round_args->family, "policy family")
      ->check(CLI::IsMember({"static", "shifted", "interleaved"}));
  round->add_option("--m", round_args->m, "grid base");
  round->add_option("--k", round_args->k, "subdivision depth");
  round->add_option("--alpha", round_args->alpha,
                    "interleaved offset as a fraction, e.g. 3/2");
  double theta_in = -1.0;
  auto* theta_opt = round->add_option("--theta", theta_in, "shift in [0, 1]");
  round->add_flag("--derandomize", round_args->do_derandomize,
                  "pick the cost-minimizing shift");
  round->add_option("--out", round_args->out, "output policy file");
  round->callback([&, round_args, theta_opt] {
    if (theta_opt->count() > 0) round_args->theta = theta_in;
    guard("round", [&] { return run_round(ctx, *round_args); });
  });

  auto* eval = app.add_subcommand("evaluate", "exact long-run cost of a policy");
  auto eval_args = std::make_shared<EvaluateArgs>();
  eval->add_option("--policy", eval_args->policy, "policy file")->required();
  eval->add_option("--instance", eval_args->instance, "instance file")
      ->required();
  eval->add_option("--tol", eval_args->tol,
                   "relaxation tolerance when the policy lacks an optimum");
  eval->add_option("--out", eval_args->out, "output report file");
  eval->callback(
      [&, eval_args] { guard("evaluate", [&] { return run_evaluate(ctx, *eval_args); }); });

  auto* sim = app.add_subcommand("simulate",
                                 "count joint order epochs over a horizon");
  auto sim_args = std::make_shared<SimulateArgs>();
  sim->add_option("--policy", sim_args->policy, "policy file")->required();
  sim->add_option("--horizon", sim_args->horizon, "time horizon");
  sim->add_option("--out", sim_args->out, "output report file");
  sim->callback(
      [&, sim_args] { guard("simulate", [&] { return run_simulate(ctx, *sim_args); }); });

  auto* oracle = app.add_subcommand(
      "oracle-theta", "Monte-Carlo check of shift-expectation closed forms");
  auto oracle_args = std::make_shared<OracleArgs>();
  oracle->add_option("--quantity", oracle_args->quantity,
                     "round, recip, or density")
      ->check(CLI::IsMember({"round", "recip", "density"}));
  oracle->add_option("--m", oracle_args->m, "grid base");
  oracle->add_option("--k", oracle_args->k, "subdivision depth");
  oracle->add_option("--alpha", oracle_args->alpha, "interleaved offset");
  oracle->add_option("--t", oracle_args->t, "point to round");
  oracle->add_option("--anchor", oracle_args->anchor, "grid anchor");
  oracle->add_option("--samples", oracle_args->samples, "sample count")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oracle_args->seed, "sampling seed");
  oracle->add_option("--out", oracle_args->out, "output report file");
  oracle->callback([&, oracle_args] {
    guard("oracle-theta", [&] { return run_oracle(ctx, *oracle_args); });
  });

  auto* lp = app.add_subcommand("lp-bound",
                                "factor-revealing bound for best-of-two");
  auto lp_args = std::make_shared<LpArgs>();
  lp->add_option("--N,--classes", lp_args->classes, "period classes")
      ->check(CLI::PositiveNumber);
  lp->add_option("--L,--shifts", lp_args->shifts, "shift grid size")
      ->check(CLI::NonNegativeNumber);
  lp->add_flag("--full", lp_args->full, "run the 2000 x 2000 model");
  lp->add_option("--out", lp_args->out, "output report file");
  lp->callback([&, lp_args] { guard("lp-bound", [&] { return run_lp(ctx, *lp_args); }); });

  auto* verify = app.add_subcommand("verify-claims",
                                    "sweep checks of the optimal grid choices");
  auto verify_args = std::make_shared<VerifyArgs>();
  verify->add_option("--claim", verify_args->claim, "a1, a2, lemma42, or all");
  verify->add_option("--out", verify_args->out, "output directory");
  verify->callback([&, verify_args] {
    guard("verify-claims", [&] { return run_verify(ctx, *verify_args); });
  });

  auto* repro = app.add_subcommand("reproduce",
                                   "full pipeline: ratio table, multipliers, "
                                   "and the factor-revealing bound");
  auto repro_args = std::make_shared<ReproduceArgs>();
  repro->add_option("--count", repro_args->count, "number of random instances")
      ->check(CLI::NonNegativeNumber);
  repro->add_option("--seed", repro_args->seed, "root seed");
  repro->add_option("--samples", repro_args->samples,
                    "shift samples per averaged family")
      ->check(CLI::PositiveNumber);
  repro->add_flag("--full", repro_args->full,
                  "use the 2000 x 2000 factor-revealing model");
  repro->add_option("--out", repro_args->out, "output directory");
  repro->callback([&, repro_args] {
    guard("reproduce", [&] { return run_reproduce_cmd(ctx, *repro_args); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return rc;
}
