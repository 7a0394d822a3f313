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

#include "fluidq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluidq/format.hpp"

namespace fluidq {
namespace {

std::string Num(double v) { return format_double(v); }

bool HdsUnequal(const GameParams& p) {
  return p.topology == Topology::kHds && p.gamma1 != p.gamma2 &&
         p.lambda1 > 0.0 && p.lambda2 > 0.0;
}

bool HasUnequal(const EapSolution& s, const GameParams& p) {
  return p.topology == Topology::kHas && p.gamma1 != p.gamma2 &&
         p.lambda1 > 0.0 && p.lambda2 > 0.0 && s.profile.has_value();
}

// Slopes of all increasing linear pieces.
std::vector<double> PositiveSlopes(const Curve& c) {
  std::vector<double> out;
  const auto& k = c.knots();
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    const double rise = k[i + 1].left - k[i].right;
    if (rise > kMergeTolerance) out.push_back(rise / (k[i + 1].t - k[i].t));
  }
  return out;
}

bool Near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// inf{t > 0 : Q(t) = 0}.
double FirstEmptyAfterZero(const QueueTrace& q) {
  for (const Interval& iv : q.engaged.intervals) {
    if (iv.lo <= 0.0 && iv.hi > 0.0) return iv.hi;
  }
  return 0.0;
}

void MassChecks(const JointProfile& prof, const GameParams& p, double tol,
                const std::string& prefix, VerificationReport& r) {
  for (int i = 1; i <= 2; ++i) {
    const Curve& f = prof[i];
    const bool shape = f.has_finite_tails() && f.is_non_decreasing(kMergeTolerance);
    const double err =
        shape ? std::abs(total_increase(f) - p.lambda(i)) : INFINITY;
    r.mass_error[i - 1] = std::max(r.mass_error[i - 1], err);
    r.add({prefix + "mass_" + std::to_string(i), shape && err <= tol,
           "error " + Num(err)});
  }
}

}  // namespace

void VerificationReport::add(CheckResult c) {
  passed = passed && c.passed;
  checks.push_back(std::move(c));
}

double overlap_measure(const Support& a, const Support& b) {
  double m = 0.0;
  for (const Interval& x : a.intervals) {
    for (const Interval& y : b.intervals) {
      m += std::max(0.0, std::min(x.hi, y.hi) - std::max(x.lo, y.lo));
    }
  }
  return m;
}

double shared_service_measure(const NetworkTrace& tr) {
  if (tr.params.topology != Topology::kHas || !tr.forwarded || !tr.queue2) {
    throw std::invalid_argument("shared_service_measure needs a HAS trace");
  }
  const Support y1 = support(*tr.forwarded);
  const Support s2 = support(tr.f2);
  const Curve& tau2 = tr.queue2->tau;
  double m = 0.0;
  for (const Interval& x : y1.intervals) {
    for (const Interval& y : s2.intervals) {
      const double lo = std::max(x.lo, y.lo);
      const double hi = std::min(x.hi, y.hi);
      if (hi > lo) m += tau2.eval_left(hi) - tau2.eval(lo);
    }
  }
  return m;
}

double social_cost(const NetworkTrace& tr) {
  const std::vector<double> kinks = tr.kink_times();
  double total = 0.0;
  for (int i = 1; i <= 2; ++i) {
    const Curve& f = tr.profile(i);
    std::vector<double> ts = kinks;
    for (const Knot& k : f.knots()) ts.push_back(k.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (size_t j = 0; j < ts.size(); ++j) {
      const double jump = f.eval(ts[j]) - f.eval_left(ts[j]);
      if (jump != 0.0) total += jump * tr.cost(i, ts[j]);
      if (j + 1 < ts.size()) {
        const double a = ts[j];
        const double b = ts[j + 1];
        const double mass = f.eval_left(b) - f.eval(a);
        // Cost is linear on (a, b), so the midpoint rule is exact.
        if (mass != 0.0) total += mass * tr.cost(i, 0.5 * (a + b));
      }
    }
  }
  return total;
}

double social_cost(const Curve& f1, const Curve& f2, const GameParams& p) {
  return social_cost(compose(f1, f2, p));
}

VerificationReport check_equilibrium(const Curve& f1, const Curve& f2,
                                     const GameParams& p, double eps) {
  p.validate();
  VerificationReport r;
  r.eps = eps;
  MassChecks(JointProfile{f1, f2}, p, eps, "", r);
  if (!r.passed) return r;

  const NetworkTrace tr = compose(f1, f2, p);
  const std::array<Support, 2> sup{support(f1), support(f2)};
  double ta = INFINITY;
  double tf = -INFINITY;
  for (const Support& s : sup) {
    if (s.empty()) continue;
    ta = std::min(ta, s.lo());
    tf = std::max(tf, s.hi());
  }
  if (!std::isfinite(ta)) {
    r.add({"supports", true, "both classes empty"});
    return r;
  }

  std::vector<double> ts = tr.kink_times();
  const double span = std::max(tf - ta, 1.0);
  const double lo = ta - span;
  const double hi = tf + span;
  for (int k = 0; k < kScanGridPoints; ++k) {
    ts.push_back(lo + (hi - lo) * k / (kScanGridPoints - 1));
  }
  ts.push_back(tf + (p.lambda1 + p.lambda2) / std::min(p.mu1, p.mu2));
  for (const Support& s : sup) {
    for (const Interval& iv : s.intervals) {
      ts.push_back(iv.lo);
      ts.push_back(iv.hi);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  for (int i = 1; i <= 2; ++i) {
    const Support& s = sup[i - 1];
    if (s.empty()) continue;
    double on_max = -INFINITY, on_min = INFINITY, off_min = INFINITY;
    for (double t : ts) {
      const double c = tr.cost(i, t);
      if (s.contains(t, 0.0)) {
        on_max = std::max(on_max, c);
        on_min = std::min(on_min, c);
      } else {
        off_min = std::min(off_min, c);
      }
    }
    const double iso = on_max - on_min;
    const double gain = std::max(0.0, on_max - off_min);
    r.iso_cost_deviation[i - 1] = iso;
    r.deviation_gain[i - 1] = gain;
    r.support_cost[i - 1] = on_max;
    const std::string n = std::to_string(i);
    r.add({"iso_cost_" + n, iso <= eps, "spread " + Num(iso)});
    r.add({"no_profitable_deviation_" + n, gain <= eps, "gain " + Num(gain)});
  }
  r.social_cost = social_cost(tr);
  return r;
}

VerificationReport audit_structure(const EapSolution& sol, const GameParams& p,
                                   double tol) {
  p.validate();
  VerificationReport r;
  r.eps = tol;
  if (!sol.profile) {
    if (!sol.class1_first || !sol.class2_first) {
      r.add({"profile_present", false, "no profile and no extreme profiles"});
      return r;
    }
    MassChecks(*sol.class1_first, p, tol, "class1_first_", r);
    MassChecks(*sol.class2_first, p, tol, "class2_first_", r);
    return r;
  }
  const JointProfile& prof = *sol.profile;
  MassChecks(prof, p, tol, "", r);
  if (!r.passed) return r;
  const NetworkTrace tr = compose(prof.f1, prof.f2, p);
  const Support s1 = support(prof.f1);
  const Support s2 = support(prof.f2);
  const SupportBoundaries& b = sol.boundaries;

  if (sol.split_point && sol.split_point_closed_form) {
    r.add({"split_point_agreement",
           Near(*sol.split_point, *sol.split_point_closed_form, tol),
           "engine " + Num(*sol.split_point) + " closed form " +
               Num(*sol.split_point_closed_form)});
  }

  if (HdsUnequal(p)) {
    const double m1 = p.mu1, m2 = p.mu2, g1 = p.gamma1, g2 = p.gamma2;
    const double ov = overlap_measure(s1, s2);
    const bool expect_disjoint = m1 <= m2 * std::max(1.0, g2 / g1);
    r.add({"overlap_criterion", (ov < tol) == expect_disjoint,
           "overlap " + Num(ov) + (expect_disjoint ? " expected 0" : " expected > 0")});
    r.add({"supports_are_intervals",
           s1.intervals.size() == 1 && s2.intervals.size() == 1,
           std::to_string(s1.intervals.size()) + " and " +
               std::to_string(s2.intervals.size()) + " intervals"});
    if (m1 > m2) {
      bool ok = true;
      for (double sl : PositiveSlopes(prof.f2)) ok = ok && Near(sl, m2 * g2, tol);
      for (double sl : PositiveSlopes(prof.f1)) {
        ok = ok && (Near(sl, m1 * g1, tol) || Near(sl, m1 * g1 - m2 * g2, tol));
      }
      r.add({"rate_law", ok, "class rates against mu_i gamma_i combinations"});

      const double q2 = tr.queue2->q.eval(tr.queue1.tau.eval(s2.hi()));
      r.add({"queue2_idle_at_class2_exit", q2 < tol, "Q2 " + Num(q2)});
      if (m1 * g1 > m2 * g2) {
        const double q1 = tr.queue1.q.eval(s1.hi());
        r.add({"queue1_idle_at_class1_exit", q1 < tol, "Q1 " + Num(q1)});
      }
      if (g1 <= m2 / m1 * g2) {
        r.add({"boundary_order", std::abs(s1.hi() - s2.lo()) <= tol,
               "T1f " + Num(s1.hi()) + " T2a " + Num(s2.lo())});
      } else if (g1 < g2) {
        r.add({"boundary_order", s1.hi() <= s2.hi() + tol,
               "T1f " + Num(s1.hi()) + " T2f " + Num(s2.hi())});
      } else {
        r.add({"boundary_order", s1.lo() > s2.lo(),
               "T1a " + Num(s1.lo()) + " T2a " + Num(s2.lo())});
      }
    }
  }

  if (HasUnequal(sol, p)) {
    const double shared = shared_service_measure(tr);
    const bool expect_disjoint = p.mu1 >= p.mu2 * p.gamma2;
    r.add({"disjoint_service_criterion", (shared < tol) == expect_disjoint,
           "shared service " + Num(shared) +
               (expect_disjoint ? " expected 0" : " expected > 0")});
    const size_t want = sol.tag == RegimeTag::kHasII3c ? 2 : 1;
    r.add({"class2_interval_count", s2.intervals.size() == want,
           std::to_string(s2.intervals.size()) + " intervals, expected " +
               std::to_string(want)});
  }

  if (p.topology == Topology::kHas && b.t_empty && tr.queue2) {
    const double t = FirstEmptyAfterZero(*tr.queue2);
    r.add({"queue2_first_empty", Near(t, *b.t_empty, tol),
           "engine " + Num(t) + " closed form " + Num(*b.t_empty)});
  }
  return r;
}

}  // namespace fluidq
