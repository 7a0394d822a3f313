// Copyright 2026 The fluidq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fluidq/cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fluidq/eap_solver.hpp"
#include "fluidq/format.hpp"
#include "fluidq/io.hpp"
#include "fluidq/oracle.hpp"
#include "fluidq/verifier.hpp"

namespace fluidq {
namespace {

const std::set<std::string> kParamKeys = {
    "topology", "mu1",    "mu2",    "lambda1", "lambda2", "gamma1",
    "gamma2",   "alpha1", "beta1",  "alpha2",  "beta2"};
const std::set<std::string> kOptionKeys = {
    "eps", "dt", "seed", "rows", "max_iters", "stop_tol", "samples"};

// Everything a subcommand may read. Flags left unset fall back to the
// config file, then to the defaults below.
struct Options {
  std::string config;
  std::string out;
  std::string profiles;
  std::string f1;
  std::string f2;
  std::optional<std::string> topology;
  std::optional<double> mu1, mu2, lambda1, lambda2, gamma1, gamma2;
  std::optional<double> eps, dt, stop_tol;
  std::optional<std::int64_t> seed;
  std::optional<int> rows, max_iters, samples;
  // Sweep axes.
  std::string axis, axis2;
  double from = 0.0, to = 0.0, from2 = 0.0, to2 = 0.0;
  int steps = 0, steps2 = 1;
};

struct Context {
  GameParams params;
  Json config = Json::object();
  Json base = Json::object();
};

template <typename T>
T Pick(const std::optional<T>& flag, const Json& config, const char* key,
       T fallback) {
  if (flag) return *flag;
  if (config.contains(key)) return config.at(key).get<T>();
  return fallback;
}

Json LoadConfig(const Options& o) {
  if (o.config.empty()) return Json::object();
  Json j = read_json_file(o.config);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kParamKeys.count(key) && !kOptionKeys.count(key)) {
      throw std::invalid_argument("unknown config key \"" + key + "\"");
    }
  }
  return j;
}

// Parameters from `base` (a solution's params, if any), then the config,
// then individual flags.
GameParams ResolveParams(const Options& o, const Json& base,
                         const Json& config) {
  Json j = base;
  for (const auto& [key, value] : config.items()) {
    if (kParamKeys.count(key)) j[key] = value;
  }
  auto set = [&j](const char* key, const auto& flag) {
    if (flag) j[key] = *flag;
  };
  set("topology", o.topology);
  set("mu1", o.mu1);
  set("mu2", o.mu2);
  set("lambda1", o.lambda1);
  set("lambda2", o.lambda2);
  for (int i = 1; i <= 2; ++i) {
    const auto& g = i == 1 ? o.gamma1 : o.gamma2;
    const std::string n = std::to_string(i);
    if (g) {
      j.erase("alpha" + n);
      j.erase("beta" + n);
      j["gamma" + n] = *g;
    } else if (j.contains("alpha" + n) || j.contains("beta" + n)) {
      j.erase("gamma" + n);
    }
  }
  GameParams p = params_from_json(j);
  p.validate();
  return p;
}

void Emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
}

std::string Summary(const EapSolution& s) {
  std::ostringstream os;
  os << "tag " << to_string(s.tag) << '\n';
  const SupportBoundaries& b = s.boundaries;
  const std::pair<const char*, std::optional<double>> rows[] = {
      {"t1a", b.t1a}, {"t1f", b.t1f}, {"t2a", b.t2a},      {"t2f", b.t2f},
      {"ta", b.ta},   {"tf", b.tf},   {"t_empty", b.t_empty}};
  for (const auto& [name, v] : rows) {
    if (v) os << name << ' ' << format_double(*v) << '\n';
  }
  return os.str();
}

// A named joint profile to check, plus the solution it belongs to.
struct Candidates {
  EapSolution solution;
  std::vector<std::pair<std::string, JointProfile>> members;
};

// Profiles named on the command line, or nullopt when none were given.
std::optional<Candidates> LoadCandidates(const Options& o, Json& base) {
  if (!o.f1.empty() || !o.f2.empty()) {
    if (o.f1.empty() || o.f2.empty()) {
      throw std::invalid_argument("--f1 and --f2 go together");
    }
    Candidates c;
    c.members.push_back({"profile", JointProfile{
                                        curve_from_json(read_json_file(o.f1)),
                                        curve_from_json(read_json_file(o.f2))}});
    return c;
  }
  if (o.profiles.empty()) return std::nullopt;
  const Json j = read_json_file(o.profiles);
  if (j.contains("params")) base = j.at("params");
  Candidates c;
  if (j.contains("tag")) {
    c.solution = solution_from_json(j);
  } else {
    c.solution.profile = profile_from_json(j);
  }
  if (c.solution.profile) {
    c.members.push_back({"profile", *c.solution.profile});
  } else {
    if (!c.solution.class1_first || !c.solution.class2_first) {
      throw std::invalid_argument(o.profiles + " carries no profiles");
    }
    c.members.push_back({"class1_first", *c.solution.class1_first});
    c.members.push_back({"class2_first", *c.solution.class2_first});
  }
  return c;
}

int CmdSolve(const Options& o, std::ostream& out) {
  const Json config = LoadConfig(o);
  const GameParams p = ResolveParams(o, Json::object(), config);
  const EapSolution s = solve(p);
  Json j = solution_to_json(s, p);
  const int samples = Pick(o.samples, config, "samples", 0);
  if (samples < 0) throw std::invalid_argument("--samples must be >= 0");
  if (samples > 0 && s.convex_set) {
    const auto seed =
        static_cast<std::uint64_t>(Pick<std::int64_t>(o.seed, config, "seed", 0));
    Json arr = Json::array();
    for (int k = 0; k < samples; ++k) {
      arr.push_back(profile_to_json(sample_convex_eap(*s.convex_set, seed + k)));
    }
    j["convex_set"]["samples"] = arr;
  }
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_text_file(o.out, j.dump(2) + "\n");
    out << Summary(s);
  }
  return kExitOk;
}

int CmdVerify(const Options& o, std::ostream& out) {
  const Json config = LoadConfig(o);
  Json base = Json::object();
  std::optional<Candidates> c = LoadCandidates(o, base);
  if (!c) throw std::invalid_argument("verify needs --profiles or --f1/--f2");
  const GameParams p = ResolveParams(o, base, config);
  const double eps = Pick(o.eps, config, "eps", kDefaultEps);
  if (!(eps > 0.0)) throw std::invalid_argument("--eps must be positive");

  if (!c->solution.profile && !c->solution.convex_set) {
    // Bare profiles: audit them against the regime of the parameters.
    c->solution.tag = classify(p);
    c->solution.profile = c->members.front().second;
  }
  bool passed = true;
  Json members = Json::array();
  for (const auto& [name, prof] : c->members) {
    const VerificationReport r = check_equilibrium(prof.f1, prof.f2, p, eps);
    passed = passed && r.passed;
    members.push_back({{"name", name}, {"equilibrium", report_to_json(r)}});
  }
  const VerificationReport audit = audit_structure(c->solution, p, eps);
  passed = passed && audit.passed;
  const Json j = {{"passed", passed},
                  {"params", params_to_json(p)},
                  {"tag", to_string(c->solution.tag)},
                  {"members", members},
                  {"structure", report_to_json(audit)}};
  Emit(o, out, j.dump(2) + "\n");
  if (!o.out.empty()) out << (passed ? "PASS" : "FAIL") << '\n';
  return passed ? kExitOk : kExitVerifyFailed;
}

int CmdOracle(const Options& o, std::ostream& out) {
  const Json config = LoadConfig(o);
  const GameParams p = ResolveParams(o, Json::object(), config);
  OracleConfig cfg;
  cfg.dt = Pick(o.dt, config, "dt", cfg.dt);
  cfg.max_iters = Pick(o.max_iters, config, "max_iters", cfg.max_iters);
  cfg.stop_tol = Pick(o.stop_tol, config, "stop_tol", cfg.stop_tol);
  if (cfg.max_iters < 1) throw std::invalid_argument("--max-iters must be >= 1");
  const OracleResult r = solve_fixed_point(p, cfg);
  const EapSolution s = solve(p);
  std::optional<std::array<double, 2>> dist;
  if (s.profile) {
    dist = std::array<double, 2>{kolmogorov_distance(r.profile, 1, s.profile->f1),
                                 kolmogorov_distance(r.profile, 2, s.profile->f2)};
  }
  const Json j = {{"params", params_to_json(p)},
                  {"tag", to_string(s.tag)},
                  {"diagnostics", diagnostics_to_json(r.diagnostics, dist)},
                  {"profile", discrete_profile_to_json(r.profile)}};
  Emit(o, out, j.dump(2) + "\n");
  return kExitOk;
}

double& Axis(GameParams& p, const std::string& name) {
  if (name == "mu1") return p.mu1;
  if (name == "mu2") return p.mu2;
  if (name == "lambda1") return p.lambda1;
  if (name == "lambda2") return p.lambda2;
  if (name == "gamma1") return p.gamma1;
  if (name == "gamma2") return p.gamma2;
  throw std::invalid_argument("unknown sweep axis \"" + name + "\"");
}

std::vector<double> Range(double from, double to, int steps, const char* flag) {
  if (steps < 1) {
    throw std::invalid_argument(std::string(flag) + " must be >= 1");
  }
  if (steps > 1 && from == to) {
    throw std::invalid_argument(std::string("zero step size for ") + flag);
  }
  std::vector<double> v;
  for (int k = 0; k < steps; ++k) {
    v.push_back(steps == 1 ? from : from + (to - from) * k / (steps - 1));
  }
  return v;
}

int CmdSweep(const Options& o, std::ostream& out) {
  const Json config = LoadConfig(o);
  const GameParams base = ResolveParams(o, Json::object(), config);
  GameParams probe = base;
  (void)Axis(probe, o.axis);
  const std::vector<double> xs = Range(o.from, o.to, o.steps, "--steps");
  std::vector<double> ys{0.0};
  if (!o.axis2.empty()) {
    (void)Axis(probe, o.axis2);
    if (o.axis2 == o.axis) throw std::invalid_argument("--axis2 repeats --axis");
    ys = Range(o.from2, o.to2, o.steps2, "--steps2");
  }
  std::vector<GameParams> points;
  for (double x : xs) {
    for (double y : ys) {
      GameParams p = base;
      Axis(p, o.axis) = x;
      if (!o.axis2.empty()) Axis(p, o.axis2) = y;
      p.validate();
      points.push_back(p);
    }
  }

  std::ostringstream csv;
  csv << "index,topology,mu1,mu2,lambda1,lambda2,gamma1,gamma2,tag,"
         "t1a,t1f,t2a,t2f,ta,tf,t_empty,social_cost\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (size_t n = 0; n < points.size(); ++n) {
    const GameParams& p = points[n];
    const EapSolution s = solve(p);
    const JointProfile& prof = s.profile ? *s.profile : *s.class1_first;
    const SupportBoundaries& b = s.boundaries;
    csv << n << ',' << to_string(p.topology) << ',' << format_double(p.mu1)
        << ',' << format_double(p.mu2) << ',' << format_double(p.lambda1)
        << ',' << format_double(p.lambda2) << ',' << format_double(p.gamma1)
        << ',' << format_double(p.gamma2) << ',' << to_string(s.tag) << ','
        << opt(b.t1a) << ',' << opt(b.t1f) << ',' << opt(b.t2a) << ','
        << opt(b.t2f) << ',' << opt(b.ta) << ',' << opt(b.tf) << ','
        << opt(b.t_empty) << ','
        << format_double(social_cost(prof.f1, prof.f2, p)) << '\n';
  }
  Emit(o, out, csv.str());
  return kExitOk;
}

int CmdTrace(const Options& o, std::ostream& out) {
  const Json config = LoadConfig(o);
  Json base = Json::object();
  const std::optional<Candidates> c = LoadCandidates(o, base);
  const GameParams p = ResolveParams(o, base, config);
  const int rows = Pick(o.rows, config, "rows", 200);
  if (rows < 1) throw std::invalid_argument("--rows must be >= 1");
  JointProfile prof;
  if (c) {
    prof = c->members.front().second;
  } else {
    const EapSolution s = solve(p);
    prof = s.profile ? *s.profile : *s.class1_first;
  }
  std::ostringstream csv;
  write_trace_csv(compose(prof.f1, prof.f2, p), rows, csv);
  Emit(o, out, csv.str());
  return kExitOk;
}

void AddCommon(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--out", o.out, "Output file (default: standard output)");
  app->add_option("--topology", o.topology,
                  "SingleQueue | TandemCommon | Parallel | HDS | HAS");
  app->add_option("--mu1", o.mu1, "Service rate of queue 1");
  app->add_option("--mu2", o.mu2, "Service rate of queue 2");
  app->add_option("--lambda1", o.lambda1, "Mass of class 1");
  app->add_option("--lambda2", o.lambda2, "Mass of class 2");
  app->add_option("--gamma1", o.gamma1, "Preference of class 1, in (0,1)");
  app->add_option("--gamma2", o.gamma2, "Preference of class 2, in (0,1)");
}

void AddProfileInputs(CLI::App* app, Options& o) {
  app->add_option("--profiles", o.profiles,
                  "Solution JSON (as written by solve) or {f1, f2} profile JSON");
  app->add_option("--f1", o.f1, "Curve JSON of class 1");
  app->add_option("--f2", o.f2, "Curve JSON of class 2");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Equilibrium arrival profiles of two-class fluid queue networks",
               "fluidq"};
  app.require_subcommand(1);
  Options o;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Classify and solve");
  AddCommon(solve_cmd, o);
  solve_cmd->add_option("--seed", o.seed, "Seed for --samples (default 0)");
  solve_cmd->add_option("--samples", o.samples,
                        "Random members of a convex equilibrium set to add");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check an equilibrium");
  AddCommon(verify_cmd, o);
  AddProfileInputs(verify_cmd, o);
  verify_cmd->add_option("--eps", o.eps, "Tolerance (default 1e-9)");

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Run the fictitious-play oracle");
  AddCommon(oracle_cmd, o);
  oracle_cmd->add_option("--dt", o.dt, "Grid spacing (default 0.01)");
  oracle_cmd->add_option("--max-iters", o.max_iters, "Iteration cap (default 3000)");
  oracle_cmd->add_option("--stop-tol", o.stop_tol,
                         "Stop when a sweep moves less than this (default 0)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Regime map over a grid");
  AddCommon(sweep_cmd, o);
  sweep_cmd->add_option("--axis", o.axis, "Swept parameter")->required();
  sweep_cmd->add_option("--from", o.from, "First value")->required();
  sweep_cmd->add_option("--to", o.to, "Last value")->required();
  sweep_cmd->add_option("--steps", o.steps, "Number of points")->required();
  sweep_cmd->add_option("--axis2", o.axis2, "Second swept parameter");
  sweep_cmd->add_option("--from2", o.from2, "First value of the second axis");
  sweep_cmd->add_option("--to2", o.to2, "Last value of the second axis");
  sweep_cmd->add_option("--steps2", o.steps2, "Points on the second axis");

  CLI::App* trace_cmd = app.add_subcommand("trace", "Queue and cost trace CSV");
  AddCommon(trace_cmd, o);
  AddProfileInputs(trace_cmd, o);
  trace_cmd->add_option("--rows", o.rows, "Uniform grid rows (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (solve_cmd->parsed()) return CmdSolve(o, out);
    if (verify_cmd->parsed()) return CmdVerify(o, out);
    if (oracle_cmd->parsed()) return CmdOracle(o, out);
    if (sweep_cmd->parsed()) return CmdSweep(o, out);
    if (trace_cmd->parsed()) return CmdTrace(o, out);
  } catch (const std::exception& e) {
    err << "fluidq: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace fluidq
