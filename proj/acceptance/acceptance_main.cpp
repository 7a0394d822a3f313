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


// Acceptance suite. One PASS/FAIL line per criterion; tolerances are fixed
// here. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fluidq/eap_solver.hpp"
#include "fluidq/fluid_queue.hpp"
#include "fluidq/oracle.hpp"
#include "fluidq/verifier.hpp"
#include "support/queue_sim.hpp"
#include "support/random_curves.hpp"
#include "support/regime_sampler.hpp"

namespace fluidq {
namespace {

constexpr double kEps = 1e-9;
constexpr double kWorkedTol = 1e-12;
constexpr int kPointsPerRegime = 200;
constexpr double kValidityBudgetSec = 60.0;
constexpr double kOracleDt = 0.01;
constexpr double kOracleTol = 0.05;
constexpr int kOracleIters = 131072;
constexpr double kOracleBudgetSec = 300.0;
constexpr int kAuditPoints = 500;
constexpr int kConvexSamples = 100;
constexpr double kContinuityOffset = 1e-8;
constexpr double kContinuityTol = 1e-6;
constexpr int kContinuityPoints = 50;
constexpr int kEngineInputs = 50;
constexpr double kSimDt = 1e-4;
constexpr double kSimTol = 2e-4;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

GameParams Params(Topology t, double mu1, double mu2, double l1, double l2,
                  double g1, double g2) {
  GameParams p;
  p.topology = t;
  p.mu1 = mu1;
  p.mu2 = mu2;
  p.lambda1 = l1;
  p.lambda2 = l2;
  p.gamma1 = g1;
  p.gamma2 = g2;
  return p;
}

int failures = 0;

void Report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void ClosedFormValidity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  int points = 0, regimes = 0, bad = 0;
  std::string bad_tags;
  for (RegimeTag tag : all_regimes()) {
    if (tag == RegimeTag::kSq || is_convex_regime(tag)) continue;
    ++regimes;
    int bad_here = 0;
    for (int k = 0; k < kPointsPerRegime; ++k) {
      const GameParams p = testing::SampleRegime(tag, rng);
      const EapSolution s = solve(p);
      ++points;
      if (!s.profile || !check_equilibrium(s.profile->f1, s.profile->f2, p, kEps).passed) {
        ++bad_here;
      }
    }
    if (bad_here > 0) bad_tags += " " + to_string(tag);
    bad += bad_here;
  }
  const double sec = Seconds(start);
  Report(1, "closed-form equilibrium validity", bad == 0 && sec < kValidityBudgetSec,
         std::to_string(regimes) + " regimes x " + std::to_string(kPointsPerRegime) +
             " points = " + std::to_string(points) + ", " + std::to_string(bad) +
             " failures at eps 1e-9" + (bad_tags.empty() ? "" : " (" + bad_tags + " )") +
             ", " + Fmt("%.1f s", sec) + " (limit 60 s)");
}

bool Near(const std::optional<double>& v, double want, double& worst) {
  if (!v) {
    worst = INFINITY;
    return false;
  }
  worst = std::max(worst, std::abs(*v - want));
  return std::abs(*v - want) <= kWorkedTol;
}

void WorkedValues() {
  double worst = 0.0;
  bool ok = true;
  const GameParams hds = Params(Topology::kHds, 2, 1, 2, 1, 0.3, 0.8);
  const EapSolution a = solve(hds);
  ok &= a.tag == RegimeTag::kHds1;
  ok &= Near(a.boundaries.t1a, -31.0 / 12.0, worst);
  ok &= Near(a.boundaries.t1f, 0.75, worst);
  ok &= Near(a.boundaries.t2a, 0.75, worst);
  ok &= Near(a.boundaries.t2f, 2.0, worst);

  const GameParams has = Params(Topology::kHas, 1, 2, 1, 2, 0.2, 0.5);
  const EapSolution b = solve(has);
  ok &= b.tag == RegimeTag::kHasII3c;
  ok &= Near(b.boundaries.t1a, -1.5, worst);
  ok &= Near(b.boundaries.t2a, -1.5, worst);
  ok &= Near(b.boundaries.t1f, 1.0, worst);
  ok &= Near(b.boundaries.t2f, 1.5, worst);
  ok &= Near(b.boundaries.t_empty, 1.5, worst);
  const Support s2 = support(b.profile->f2);
  const bool two = s2.intervals.size() == 2 &&
                   s2.intervals[0].hi < s2.intervals[1].lo;
  ok &= two;
  std::string iv;
  for (const Interval& i : s2.intervals) {
    iv += "[" + Fmt("%g", i.lo) + "," + Fmt("%g", i.hi) + "]";
  }
  Report(2, "worked values", ok,
         "HDS-1 and HAS-II-3c boundaries, max error " + Fmt("%.2e", worst) +
             " (tol 1e-12); HAS-II-3c class-2 support " + iv);
}

// Occupied slots of class i: mass above 5% of the largest slot mass.
std::vector<Interval> Clusters(const DiscreteProfile& d, int i) {
  const auto& m = d.mass[i - 1];
  const double peak = *std::max_element(m.begin(), m.end());
  std::vector<Interval> out;
  for (int k = 0; k < d.slots(); ++k) {
    if (m[k] <= 0.05 * peak) continue;
    const double lo = d.slot_start(k), hi = lo + d.dt;
    if (!out.empty() && out.back().hi >= lo - 1e-12) {
      out.back().hi = hi;
    } else {
      out.push_back({lo, hi});
    }
  }
  return out;
}

void OracleAgreement() {
  struct Case {
    const char* name;
    GameParams p;
  };
  const Case cases[] = {
      {"SQ", Params(Topology::kSingleQueue, 1, 1, 1, 1, 0.3, 0.7)},
      {"HDS-1", Params(Topology::kHds, 2, 1, 2, 1, 0.3, 0.8)},
      {"HDS-2a", Params(Topology::kHds, 2, 1, 2, 1, 0.5, 0.6)},
      {"HAS-I-2b", Params(Topology::kHas, 1, 4, 0.2, 1, 0.3, 0.5)},
      {"HAS-II-3c", Params(Topology::kHas, 1, 2, 1, 2, 0.2, 0.5)},
  };
  bool ok = true;
  std::string detail = "dt 0.01, " + std::to_string(kOracleIters) + " sweeps;";
  for (const Case& c : cases) {
    const EapSolution s = solve(c.p);
    const std::string tag = to_string(s.tag);
    const auto start = Clock::now();
    OracleConfig cfg;
    cfg.dt = kOracleDt;
    cfg.max_iters = kOracleIters;
    const OracleResult r = solve_fixed_point(c.p, cfg);
    const double sec = Seconds(start);
    const double d1 = kolmogorov_distance(r.profile, 1, s.profile->f1);
    const double d2 = kolmogorov_distance(r.profile, 2, s.profile->f2);
    const bool here = tag == c.name && d1 <= kOracleTol && d2 <= kOracleTol &&
                      sec < kOracleBudgetSec;
    ok &= here;
    detail += " " + tag + " d=(" + Fmt("%.4f", d1) + "," + Fmt("%.4f", d2) + ") " +
              Fmt("%.0f s", sec) + (here ? ";" : " [over];");
    if (s.tag == RegimeTag::kHasII3c) {
      const std::vector<Interval> cl = Clusters(r.profile, 2);
      bool gap = cl.size() >= 2;
      for (const Interval& iv : cl) gap &= iv.hi <= 0.1 || iv.lo >= 0.9;
      detail += std::string(" class-2 clusters ") + std::to_string(cl.size()) +
                (gap ? ", gap covers [0.1,0.9];" : ", no clean gap;");
    }
  }
  detail += " (tol 0.05 per class, limit 300 s per regime)";
  Report(3, "oracle agreement", ok, detail);
}

bool CheckPassed(const VerificationReport& r, const std::string& name, bool& found) {
  for (const CheckResult& c : r.checks) {
    if (c.name == name) {
      found = true;
      return c.passed;
    }
  }
  found = false;
  return false;
}

void Audits() {
  std::mt19937_64 rng(1004);
  int overlap_bad = 0, overlap_yes = 0, service_bad = 0, service_yes = 0;
  for (int k = 0; k < kAuditPoints; ++k) {
    const GameParams p = testing::SampleUnequal(Topology::kHds, rng);
    const EapSolution s = solve(p);
    bool found = false;
    const bool pass = CheckPassed(audit_structure(s, p, kEps), "overlap_criterion", found);
    if (!found || !pass) ++overlap_bad;
    const double ov = overlap_measure(support(s.profile->f1), support(s.profile->f2));
    overlap_yes += ov >= kEps;
  }
  for (int k = 0; k < kAuditPoints; ++k) {
    const GameParams p = testing::SampleUnequal(Topology::kHas, rng);
    const EapSolution s = solve(p);
    bool found = false;
    const bool pass =
        CheckPassed(audit_structure(s, p, kEps), "disjoint_service_criterion", found);
    if (!found || !pass) ++service_bad;
    service_yes += shared_service_measure(compose(s.profile->f1, s.profile->f2, p)) >= kEps;
  }
  Report(4, "structural audits", overlap_bad == 0 && service_bad == 0,
         "overlap criterion on " + std::to_string(kAuditPoints) + " HDS points: " +
             std::to_string(overlap_bad) + " violations (" + std::to_string(overlap_yes) +
             " overlapping); disjoint-service criterion on " +
             std::to_string(kAuditPoints) + " HAS points: " + std::to_string(service_bad) +
             " violations (" + std::to_string(service_yes) + " shared); tol 1e-9");
}

void ConvexMultiplicity() {
  bool ok = true;
  std::string detail;
  const std::pair<RegimeTag, GameParams> cases[] = {
      {RegimeTag::kHdsEq2, Params(Topology::kHds, 2, 1, 2, 1, 0.5, 0.5)},
      {RegimeTag::kHasEqII3, Params(Topology::kHas, 2, 2, 1, 2, 0.5, 0.5)},
  };
  for (const auto& [tag, p] : cases) {
    const EapSolution s = solve(p);
    ok &= s.tag == tag && s.convex_set && s.class1_first && s.class2_first;
    if (!ok) break;
    bool ext_ok = check_equilibrium(s.class1_first->f1, s.class1_first->f2, p, kEps).passed &&
                  check_equilibrium(s.class2_first->f1, s.class2_first->f2, p, kEps).passed;
    const double ref = social_cost(s.class1_first->f1, s.class1_first->f2, p);
    double spread = std::abs(social_cost(s.class2_first->f1, s.class2_first->f2, p) - ref);
    int bad = 0;
    for (int k = 0; k < kConvexSamples; ++k) {
      const JointProfile m = sample_convex_eap(*s.convex_set, 5000 + k);
      if (!check_equilibrium(m.f1, m.f2, p, kEps).passed) ++bad;
      spread = std::max(spread, std::abs(social_cost(m.f1, m.f2, p) - ref));
    }
    ok &= ext_ok && bad == 0 && spread <= kEps;
    detail += to_string(tag) + ": " + std::to_string(bad) + "/" +
              std::to_string(kConvexSamples) + " samples fail, extremes " +
              (ext_ok ? "pass" : "fail") + ", social cost spread " +
              Fmt("%.1e", spread) + "; ";
  }
  Report(5, "equal-preference multiplicity", ok, detail + "(eps 1e-9, spread tol 1e-9)");
}

void Continuity() {
  struct Pair {
    const char* name;
    RegimeTag above, below;
    double (*threshold)(const GameParams&);
  };
  const Pair pairs[] = {
      {"HDS 2a/2b", RegimeTag::kHds2a, RegimeTag::kHds2b, hds_case2_threshold},
      {"HDS 3a/3b", RegimeTag::kHds3a, RegimeTag::kHds3b, hds_case3_threshold},
      {"HAS-II 2b/2c", RegimeTag::kHasII2b, RegimeTag::kHasII2c, has_case2bc_threshold},
  };
  std::mt19937_64 rng(1006);
  bool ok = true;
  std::string detail;
  for (const Pair& pr : pairs) {
    double worst = 0.0;
    int used = 0, tag_mismatch = 0;
    while (used < kContinuityPoints) {
      GameParams p = testing::SampleRegime(pr.above, rng);
      const double thr = pr.threshold(p);
      if (!(thr > 10 * kContinuityOffset)) continue;
      GameParams hi = p, lo = p;
      hi.lambda1 = thr + kContinuityOffset;
      lo.lambda1 = thr - kContinuityOffset;
      const EapSolution a = solve(hi), b = solve(lo);
      const bool flipped = (a.tag == pr.above && b.tag == pr.below) ||
                           (a.tag == pr.below && b.tag == pr.above);
      if (!flipped) ++tag_mismatch;
      // Class-1 masses differ by 2e-8 across the pair; that gap counts.
      worst = std::max({worst, kolmogorov_distance(a.profile->f1, b.profile->f1),
                        kolmogorov_distance(a.profile->f2, b.profile->f2)});
      ++used;
    }
    ok &= tag_mismatch == 0 && worst < kContinuityTol;
    detail += std::string(pr.name) + ": worst " + Fmt("%.1e", worst) +
              (tag_mismatch ? " (" + std::to_string(tag_mismatch) + " pairs without a tag flip)" : "") +
              "; ";
  }
  Report(6, "regime continuity", ok,
         std::to_string(kContinuityPoints) + " points per threshold, lambda1 = threshold +/- 1e-8; " +
             detail + "(tol 1e-6)");
}

void EngineFidelity() {
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  testing::CurveShape shape;
  shape.jump_chance = 0.15;
  double worst_ratio = 0.0;
  for (int k = 0; k < kEngineInputs; ++k) {
    const Curve a = testing::RandomProfile(rng, shape);
    const double mu = u(rng);
    const Curve q = queue_length(a, mu);
    const double lo = a.first_time() - 1.0;
    const double hi = a.last_time() + total_increase(a) / mu + 1.0;
    const auto sim = testing::SimulateQueue([&](double t) { return a.eval(t); }, mu,
                                            lo, hi, kSimDt);
    double worst = 0.0;
    for (size_t n = 0; n < sim.q.size(); ++n) {
      worst = std::max(worst, std::abs(sim.q[n] - q.eval(sim.time(n))));
    }
    worst_ratio = std::max(worst_ratio, worst / (kSimTol * mu));
  }
  Report(7, "engine fidelity", worst_ratio <= 1.0,
         std::to_string(kEngineInputs) + " random inputs vs dt=1e-4 simulator, worst error " +
             Fmt("%.3f", worst_ratio) + " x (2e-4 mu)");
}

}  // namespace
}  // namespace fluidq

int main() {
  using namespace fluidq;
  ClosedFormValidity();
  WorkedValues();
  OracleAgreement();
  Audits();
  ConvexMultiplicity();
  Continuity();
  EngineFidelity();
  std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
