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

#include "fluidq/eap_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "fluidq/fluid_queue.hpp"

namespace fluidq {
namespace {

constexpr int kSamplerPieces = 64;

struct TagName {
  RegimeTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {RegimeTag::kSq, "SQ"},
    {RegimeTag::kHdsReduce, "HDS-Reduce"},
    {RegimeTag::kHds1, "HDS-1"},
    {RegimeTag::kHds2a, "HDS-2a"},
    {RegimeTag::kHds2b, "HDS-2b"},
    {RegimeTag::kHds3a, "HDS-3a"},
    {RegimeTag::kHds3b, "HDS-3b"},
    {RegimeTag::kHdsEq1, "HDS-EQ-1"},
    {RegimeTag::kHdsEq2, "HDS-EQ-2"},
    {RegimeTag::kHasI1a, "HAS-I-1a"},
    {RegimeTag::kHasI1b, "HAS-I-1b"},
    {RegimeTag::kHasI2a, "HAS-I-2a"},
    {RegimeTag::kHasI2b, "HAS-I-2b"},
    {RegimeTag::kHasII1a, "HAS-II-1a"},
    {RegimeTag::kHasII1b, "HAS-II-1b"},
    {RegimeTag::kHasII2a, "HAS-II-2a"},
    {RegimeTag::kHasII2b, "HAS-II-2b"},
    {RegimeTag::kHasII2c, "HAS-II-2c"},
    {RegimeTag::kHasII3a, "HAS-II-3a"},
    {RegimeTag::kHasII3b, "HAS-II-3b"},
    {RegimeTag::kHasII3c, "HAS-II-3c"},
    {RegimeTag::kHasEqI1, "HAS-EQ-I-1"},
    {RegimeTag::kHasEqI2, "HAS-EQ-I-2"},
    {RegimeTag::kHasEqII1, "HAS-EQ-II-1"},
    {RegimeTag::kHasEqII2, "HAS-EQ-II-2"},
    {RegimeTag::kHasEqII3, "HAS-EQ-II-3"},
};

void SetClass(SupportBoundaries& b, int i, double a, double f) {
  if (i == 1) {
    b.t1a = a;
    b.t1f = f;
  } else {
    b.t2a = a;
    b.t2f = f;
  }
}

// Both classes share one queue of rate mu. The class with the smaller
// preference goes first; equal preferences merge proportionally.
EapSolution SingleQueueSolution(double mu, const GameParams& p) {
  EapSolution s;
  s.tag = RegimeTag::kSq;
  const double l1 = p.lambda1;
  const double l2 = p.lambda2;
  if (p.gamma1 == p.gamma2) {
    const double g = p.gamma1;
    const double total = l1 + l2;
    const double ta = -(1.0 / g - 1.0) * total / mu;
    const double tf = total / mu;
    Curve f1, f2;
    if (total > 0.0) {
      f1 = Curve::FromRates({{ta, tf, mu * g * l1 / total}});
      f2 = Curve::FromRates({{ta, tf, mu * g * l2 / total}});
    }
    if (l1 > 0.0) SetClass(s.boundaries, 1, ta, tf);
    if (l2 > 0.0) SetClass(s.boundaries, 2, ta, tf);
    s.profile = JointProfile{f1, f2};
    return s;
  }
  const int early = p.gamma1 < p.gamma2 ? 1 : 2;
  const int late = 3 - early;
  const double ge = p.gamma(early);
  const double gl = p.gamma(late);
  const double le = p.lambda(early);
  const double ll = p.lambda(late);
  const double tla = le / mu - (1.0 / gl - 1.0) * ll / mu;
  const double tlf = (le + ll) / mu;
  const double tea = -(1.0 / ge - 1.0) * le / mu - (1.0 / gl - 1.0) * ll / mu;
  const double tef = tla;
  Curve fe = Curve::FromRates({{tea, tef, mu * ge}});
  Curve fl = Curve::FromRates({{tla, tlf, mu * gl}});
  if (le > 0.0) SetClass(s.boundaries, early, tea, tef);
  if (ll > 0.0) SetClass(s.boundaries, late, tla, tlf);
  s.profile = early == 1 ? JointProfile{fe, fl} : JointProfile{fl, fe};
  return s;
}

EapSolution ParallelSolution(const GameParams& p) {
  GameParams a = p;
  a.lambda2 = 0.0;
  GameParams b = p;
  b.lambda1 = 0.0;
  EapSolution s1 = SingleQueueSolution(p.mu1, a);
  EapSolution s2 = SingleQueueSolution(p.mu2, b);
  EapSolution s;
  s.tag = RegimeTag::kSq;
  s.boundaries.t1a = s1.boundaries.t1a;
  s.boundaries.t1f = s1.boundaries.t1f;
  s.boundaries.t2a = s2.boundaries.t2a;
  s.boundaries.t2f = s2.boundaries.t2f;
  s.profile = JointProfile{s1.profile->f1, s2.profile->f2};
  return s;
}

// Time at which mass arriving at queue 1 leaves it at `target`, when class 1
// arrives alone at `rate` from t1a on. The departure map at s depends only
// on arrivals up to s, so extending the first rate past the switch is exact.
double SplitFromEngine(double t1a, double rate, double t1f, double target,
                       double mu1) {
  const double end = std::max(t1f, target) + std::abs(target) + 1.0;
  const QueueTrace q = analyze_queue(Curve::FromRates({{t1a, end, rate}}), mu1);
  return generalized_inverse(q.tau).eval(target);
}

// Class 1 arrives at r_first on [t1a, s] then r_second on [s, t1f].
Curve TwoRateClass1(EapSolution& s, double t1a, double t1f, double r_first,
                    double r_second, double target, double s_closed,
                    double mu1) {
  const double split = SplitFromEngine(t1a, r_first, t1f, target, mu1);
  s.split_point = split;
  s.split_point_closed_form = s_closed;
  return Curve::FromRates({{t1a, split, r_first}, {split, t1f, r_second}});
}

JointProfile WindowProfile(const ConvexSetDescriptor& d,
                           const std::vector<RatePiece>& capped) {
  std::vector<RatePiece> c_pieces = capped;
  std::vector<RatePiece> o_pieces;
  for (const RatePiece& r : capped) {
    o_pieces.push_back({r.start, r.end, d.total_rate - r.rate});
  }
  std::vector<RatePiece>& two = d.capped_class == 2 ? c_pieces : o_pieces;
  if (d.window_start > d.ta) two.push_back({d.ta, d.window_start, d.pre_rate2});
  Curve fc = Curve::FromRates(c_pieces);
  Curve fo = Curve::FromRates(o_pieces);
  return d.capped_class == 1 ? JointProfile{fc, fo} : JointProfile{fo, fc};
}

// Extreme members: the capped class runs at its ceiling either at the very
// start or at the very end of the window.
void AttachExtremes(EapSolution& s) {
  const ConvexSetDescriptor& d = *s.convex_set;
  const double cmax = d.effective_cap();
  const double len = d.window_mass(d.capped_class) / cmax;
  const double w0 = d.window_start;
  const double w1 = d.tf;
  JointProfile early = WindowProfile(
      d, {{w0, w0 + len, cmax}, {w0 + len, w1, 0.0}});
  JointProfile late = WindowProfile(
      d, {{w0, w1 - len, 0.0}, {w1 - len, w1, cmax}});
  if (d.capped_class == 1) {
    s.class1_first = early;
    s.class2_first = late;
  } else {
    s.class1_first = late;
    s.class2_first = early;
  }
}

void ExpectTopology(const GameParams& p, Topology t) {
  if (p.topology != t) {
    throw std::invalid_argument("topology mismatch: expected " + to_string(t));
  }
}

}  // namespace

std::string to_string(RegimeTag tag) {
  for (const TagName& tn : kTagNames) {
    if (tn.tag == tag) return tn.name;
  }
  return "?";
}

RegimeTag parse_regime(const std::string& name) {
  for (const TagName& tn : kTagNames) {
    if (name == tn.name) return tn.tag;
  }
  throw std::invalid_argument("unknown regime tag: " + name);
}

const std::vector<RegimeTag>& all_regimes() {
  static const std::vector<RegimeTag> tags = [] {
    std::vector<RegimeTag> v;
    for (const TagName& tn : kTagNames) v.push_back(tn.tag);
    return v;
  }();
  return tags;
}

bool is_convex_regime(RegimeTag tag) {
  return tag == RegimeTag::kHdsEq2 || tag == RegimeTag::kHasEqI2 ||
         tag == RegimeTag::kHasEqII3;
}

double ConvexSetDescriptor::effective_cap() const {
  return std::min(cap, total_rate);
}

double ConvexSetDescriptor::window_mass(int i) const {
  if (i == 1) return mass1;
  return mass2 - pre_rate2 * (window_start - ta);
}

RegimeTag classify_hds(const GameParams& p) {
  ExpectTopology(p, Topology::kHds);
  const double m1 = p.mu1, m2 = p.mu2, g1 = p.gamma1, g2 = p.gamma2;
  const double l1 = p.lambda1, l2 = p.lambda2;
  if (l1 == 0.0 || l2 == 0.0) return RegimeTag::kSq;
  if (m1 <= m2) return RegimeTag::kHdsReduce;
  if (g1 == g2) {
    return l1 < (m1 / m2 - 1.0) * l2 ? RegimeTag::kHdsEq1 : RegimeTag::kHdsEq2;
  }
  if (g1 <= m2 / m1 * g2) return RegimeTag::kHds1;
  if (g1 < g2) {
    return l1 >= hds_case2_threshold(p) ? RegimeTag::kHds2a : RegimeTag::kHds2b;
  }
  return l1 >= hds_case3_threshold(p) ? RegimeTag::kHds3a : RegimeTag::kHds3b;
}

RegimeTag classify_has(const GameParams& p) {
  ExpectTopology(p, Topology::kHas);
  const double m1 = p.mu1, m2 = p.mu2, g1 = p.gamma1, g2 = p.gamma2;
  const double l1 = p.lambda1, l2 = p.lambda2;
  if (l1 == 0.0 || l2 == 0.0) return RegimeTag::kSq;
  if (g1 == g2) {
    const double g = g1;
    if (m1 < m2 * g) {
      return l1 > m1 / (m2 - m1) * l2 ? RegimeTag::kHasEqI1
                                      : RegimeTag::kHasEqI2;
    }
    if ((m2 / m1 - 1.0) * l1 > l2) return RegimeTag::kHasEqII1;
    if ((1.0 / g - 1.0) * l1 >= l2) return RegimeTag::kHasEqII2;
    return RegimeTag::kHasEqII3;
  }
  if (m1 < m2 * g2) {
    if (g1 > g2) {
      return l1 >= (1.0 - g2) / (1.0 - g1) * m1 / (m2 - m1) * l2
                 ? RegimeTag::kHasI1a
                 : RegimeTag::kHasI1b;
    }
    return l1 >= m1 / (m2 - m1) * l2 ? RegimeTag::kHasI2a : RegimeTag::kHasI2b;
  }
  if (m2 * g1 > m1) {
    return l1 >= m1 / ((1.0 - g1) * m2) * l2 ? RegimeTag::kHasII1a
                                             : RegimeTag::kHasII1b;
  }
  const double gmax = std::max(g1, g2);
  const bool case2 = g1 > g2;
  if ((m2 / m1 - 1.0) * l1 > l2) {
    return case2 ? RegimeTag::kHasII2a : RegimeTag::kHasII3a;
  }
  if ((1.0 / gmax - 1.0) * l1 >= l2) {
    return case2 ? RegimeTag::kHasII2b : RegimeTag::kHasII3b;
  }
  return case2 ? RegimeTag::kHasII2c : RegimeTag::kHasII3c;
}

RegimeTag classify(const GameParams& p) {
  switch (p.topology) {
    case Topology::kHds:
      return classify_hds(p);
    case Topology::kHas:
      return classify_has(p);
    default:
      return RegimeTag::kSq;
  }
}

double hds_case2_threshold(const GameParams& p) {
  return (1.0 - p.gamma2) / (1.0 - p.gamma1) *
         (p.mu1 * p.gamma1 / (p.mu2 * p.gamma2) - 1.0) * p.lambda2;
}

double hds_case3_threshold(const GameParams& p) {
  return (p.mu1 / p.mu2 - 1.0) * p.lambda2;
}

double has_case2bc_threshold(const GameParams& p) {
  return p.gamma1 / (1.0 - p.gamma1) * p.lambda2;
}

EapSolution solve_single_queue(const GameParams& p) {
  switch (p.topology) {
    case Topology::kSingleQueue:
      return SingleQueueSolution(p.mu1, p);
    case Topology::kTandemCommon:
      return SingleQueueSolution(std::min(p.mu1, p.mu2), p);
    case Topology::kParallel:
      return ParallelSolution(p);
    default:
      throw std::invalid_argument("solve_single_queue: topology " +
                                  to_string(p.topology) +
                                  " is not a single-queue reduction");
  }
}

EapSolution solve_hds(const GameParams& p) {
  ExpectTopology(p, Topology::kHds);
  p.validate();
  const double m1 = p.mu1, m2 = p.mu2, g1 = p.gamma1, g2 = p.gamma2;
  const double l1 = p.lambda1, l2 = p.lambda2;
  // Class 2 alone crosses both queues in series; class 1 alone sees queue 1.
  if (l1 == 0.0) return SingleQueueSolution(std::min(m1, m2), p);
  if (l2 == 0.0) return SingleQueueSolution(m1, p);

  EapSolution s;
  s.tag = classify_hds(p);
  SupportBoundaries& b = s.boundaries;
  switch (s.tag) {
    case RegimeTag::kHdsReduce: {
      s = SingleQueueSolution(m1, p);
      s.tag = RegimeTag::kHdsReduce;
      return s;
    }
    case RegimeTag::kHds1: {
      const double t1a = -(1.0 / g1 - 1.0) * l1 / m1 - (1.0 / g2 - 1.0) * l2 / m2;
      const double t1f = l1 / m1 - (1.0 / g2 - 1.0) * l2 / m2;
      const double t2f = l1 / m1 + l2 / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t1f, t2f);
      s.profile = JointProfile{Curve::FromRates({{t1a, t1f, m1 * g1}}),
                               Curve::FromRates({{t1f, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHds2a: {
      const double k = (1.0 - g2) / (1.0 - g1);
      const double t1a = -(1.0 - g1) / (m1 * g1) * (l1 + k * l2);
      const double t1f = (l1 + k * l2) / m1;
      const double t2a = (l1 - (m1 - m2 * g2) / (m2 * g2) * k * l2) / m1;
      const double t2f =
          (l1 + (m1 * (g2 - g1) + m2 * g2 * (1.0 - g2)) /
                    (m2 * g2 * (1.0 - g1)) * l2) /
          m1;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      // At the 2a/2b threshold t2a == t1a up to rounding.
      const double split = std::max(t1a, t2a);
      s.profile = JointProfile{
          Curve::FromRates({{t1a, split, m1 * g1}, {split, t1f, m1 * g1 - m2 * g2}}),
          Curve::FromRates({{t2a, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHds2b:
    case RegimeTag::kHds3b: {
      const double t1a =
          (1.0 - g2) / (m1 - m2 * g2) *
          (l2 - (1.0 - g1) * m1 / ((1.0 - g2) * (m1 * g1 - m2 * g2)) * l1);
      const double t1f = (l1 + (1.0 - g2) * l2) / (m1 - m2 * g2);
      const double t2a = -(1.0 - g2) / g2 * l2 / m2;
      const double t2f = l2 / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      s.profile =
          JointProfile{Curve::FromRates({{t1a, t1f, m1 * g1 - m2 * g2}}),
                       Curve::FromRates({{t2a, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHds3a: {
      const double t1a = (g1 - g2) / g1 * l2 / (m1 * g1 - m2 * g2) -
                         (1.0 - g1) / g1 * (l1 + l2) / m1;
      const double t1f = (l1 + l2) / m1;
      const double t2a =
          -(1.0 - g1) / g1 * l1 / m1 -
          (g1 / g2 + (1.0 - g1) * m2 / m1 - 1.0) * l2 / (m2 * g1);
      const double t2f = -(1.0 - g1) / g1 * l1 / m1 +
                         (1.0 - (1.0 - g1) * m2 / m1) * l2 / (m2 * g1);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      const double split = std::max(t1a, t2f);
      s.profile = JointProfile{
          Curve::FromRates({{t1a, split, m1 * g1 - m2 * g2}, {split, t1f, m1 * g1}}),
          Curve::FromRates({{t2a, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHdsEq1: {
      const double g = g1;
      const double t1a = (1.0 - g) / (m1 - m2 * g) *
                         (l2 - m1 / ((m1 - m2) * g) * l1);
      const double t1f = (l1 + (1.0 - g) * l2) / (m1 - m2 * g);
      const double ta = -(1.0 - g) / g * l2 / m2;
      const double tf = l2 / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, ta, tf);
      s.profile = JointProfile{Curve::FromRates({{t1a, t1f, (m1 - m2) * g}}),
                               Curve::FromRates({{ta, tf, m2 * g}})};
      return s;
    }
    case RegimeTag::kHdsEq2: {
      const double g = g1;
      ConvexSetDescriptor d;
      d.ta = -(1.0 / g - 1.0) * (l1 + l2) / m1;
      d.tf = (l1 + l2) / m1;
      d.window_start = d.ta;
      d.pre_rate2 = 0.0;
      d.total_rate = m1 * g;
      d.capped_class = 2;
      d.cap = m2 * g;
      d.mass1 = l1;
      d.mass2 = l2;
      b.ta = d.ta;
      b.tf = d.tf;
      SetClass(b, 1, d.ta, d.tf);
      s.convex_set = d;
      AttachExtremes(s);
      return s;
    }
    default:
      break;
  }
  throw std::logic_error("solve_hds: unhandled regime " + to_string(s.tag));
}

EapSolution solve_has(const GameParams& p) {
  ExpectTopology(p, Topology::kHas);
  p.validate();
  const double m1 = p.mu1, m2 = p.mu2, g1 = p.gamma1, g2 = p.gamma2;
  const double l1 = p.lambda1, l2 = p.lambda2;
  // Class 2 alone sees queue 2; class 1 alone crosses both in series.
  if (l1 == 0.0) return SingleQueueSolution(m2, p);
  if (l2 == 0.0) return SingleQueueSolution(std::min(m1, m2), p);

  EapSolution s;
  s.tag = classify_has(p);
  SupportBoundaries& b = s.boundaries;
  auto pos = [](double x) { return std::max(x, 0.0); };
  switch (s.tag) {
    case RegimeTag::kHasI1a:
    case RegimeTag::kHasI2a: {
      const double t1a = -(1.0 - g1) / g1 * l1 / m1 +
                         (1.0 - g2) / g1 * l2 / (m2 - m1);
      const double t1f = l1 / m1;
      const double t2a = -(1.0 - g2) / g2 * l2 / (m2 - m1);
      const double t2f = l2 / (m2 - m1);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      const double s_cf = t1a + g2 / g1 * (t2f - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m1 * g1 / g2, m1 * g1, t2f, s_cf, m1);
      Curve f2 = Curve::FromRates(
          {{t2a, 0.0, m2 * g2}, {0.0, t2f, m2 * g2 - m1}});
      s.profile = JointProfile{f1, f2};
      return s;
    }
    case RegimeTag::kHasI1b: {
      const double k = (1.0 - g1) / (1.0 - g2);
      const double t1a = (l2 - k * (m2 - m1) / m1 * l1) / m2;
      const double t1f =
          (l2 + ((g1 - g2) * m2 + (1.0 - g1) * m1) / ((1.0 - g2) * m1) * l1) /
          m2;
      const double t2a = -((1.0 - g1) * l1 + (1.0 - g2) * l2) / (m2 * g2);
      const double t2f = (l2 + k * l1) / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      const double s_cf = t1a + g2 / g1 * (t2f - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m1 * g1 / g2, m1 * g1, t2f, s_cf, m1);
      Curve f2 = Curve::FromRates(
          {{t2a, t1a, m2 * g2}, {t1a, t2f, m2 * g2 - m1}});
      s.profile = JointProfile{f1, f2};
      return s;
    }
    case RegimeTag::kHasI2b: {
      const double t1a = -(g2 / g1 - 1.0) * l1 / m1;
      const double t1f = l1 / m1;
      const double t2a = -(1.0 - g2) / g2 * (l1 + l2) / m2;
      const double t2f = (l1 + l2) / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      s.profile = JointProfile{
          Curve::FromRates({{t1a, t1f, m1 * g1 / g2}}),
          Curve::FromRates({{t2a, 0.0, m2 * g2},
                            {0.0, t1f, m2 * g2 - m1},
                            {t1f, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasII1a:
    case RegimeTag::kHasII2a:
    case RegimeTag::kHasII3a: {
      const double t1a = l2 / (m2 * g1) - (1.0 / g1 - 1.0) * l1 / m1;
      const double t1f = l1 / m1;
      const double t = l2 / (m2 - m1);
      const double t2a = -l2 / (m2 * g2);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, 0.0);
      b.t_empty = t;
      const double s_cf = t1a + m1 / (m2 * g1) * (t - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m2 * g1, m1 * g1, t, s_cf, m1);
      s.profile =
          JointProfile{f1, Curve::FromRates({{t2a, 0.0, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasII1b: {
      const double t1a = (l2 - (1.0 - g1) * m2 / m1 * l1) / m2;
      const double t1f = g1 * l1 / m1 + l2 / m2;
      const double t = l2 / m2 + (1.0 - g1) * l1 / (m2 - m1);
      const double t2a = -(1.0 / g2 - 1.0) * l2 / m2 - (1.0 - g1) * l1 / m1;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t1a);
      b.t_empty = t;
      const double s_cf = t1a + m1 / (m2 * g1) * (t - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m2 * g1, m1 * g1, t, s_cf, m1);
      s.profile =
          JointProfile{f1, Curve::FromRates({{t2a, t1a, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasII2b:
    case RegimeTag::kHasII3b: {
      const double t1a = (l2 - (1.0 / g1 - 1.0) * l1) / m2;
      const double t1f = (l1 + l2) / m2;
      const double t2a = -l2 / (m2 * g2);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, 0.0);
      b.t_empty = t1f;
      s.profile = JointProfile{Curve::FromRates({{t1a, t1f, m2 * g1}}),
                               Curve::FromRates({{t2a, 0.0, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasII2c: {
      const double t1a = (l2 - (1.0 / g1 - 1.0) * l1) / m2;
      const double t1f = (l1 + l2) / m2;
      const double t2a =
          -(1.0 / g1 - 1.0) * l1 / m2 - (1.0 / g2 - 1.0) * l2 / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t1a);
      b.t_empty = t1f;
      s.profile = JointProfile{Curve::FromRates({{t1a, t1f, m2 * g1}}),
                               Curve::FromRates({{t2a, t1a, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasII3c: {
      const double t1a = -(1.0 / g1 - 1.0 / g2) * l1 / m2;
      const double t1f = l1 / (m2 * g2);
      const double t2f = (l1 + l2) / m2;
      const double t2a = -(1.0 - g2) / g2 * (l1 + l2) / m2;
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      b.t_empty = t2f;
      s.profile = JointProfile{
          Curve::FromRates({{t1a, t1f, m2 * g1}}),
          Curve::FromRates({{t2a, 0.0, m2 * g2}, {t1f, t2f, m2 * g2}})};
      return s;
    }
    case RegimeTag::kHasEqI1: {
      const double g = g1;
      const double t1a = -(1.0 - g) / g * (l1 / m1 - l2 / (m2 - m1));
      const double t1f = l1 / m1;
      const double t2a = -(1.0 - g) / g * l2 / (m2 - m1);
      const double t2f = l2 / (m2 - m1);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, t2f);
      const double s_cf = t1a + (t2f - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m1, m1 * g, t2f, s_cf, m1);
      Curve f2 = Curve::FromRates({{t2a, 0.0, m2 * g}, {0.0, t2f, m2 * g - m1}});
      s.profile = JointProfile{f1, f2};
      return s;
    }
    case RegimeTag::kHasEqII1: {
      const double g = g1;
      const double t1a = l2 / (m2 * g) - (1.0 / g - 1.0) * l1 / m1;
      const double t1f = l1 / m1;
      const double t = l2 / (m2 - m1);
      const double t2a = -l2 / (m2 * g);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, 0.0);
      b.t_empty = t;
      const double s_cf = t1a + m1 / (m2 * g) * (t - pos(t1a));
      Curve f1 = TwoRateClass1(s, t1a, t1f, m2 * g, m1 * g, t, s_cf, m1);
      s.profile = JointProfile{f1, Curve::FromRates({{t2a, 0.0, m2 * g}})};
      return s;
    }
    case RegimeTag::kHasEqII2: {
      const double g = g1;
      const double t1a = (l2 - (1.0 / g - 1.0) * l1) / m2;
      const double t1f = (l1 + l2) / m2;
      const double t2a = -l2 / (m2 * g);
      SetClass(b, 1, t1a, t1f);
      SetClass(b, 2, t2a, 0.0);
      b.t_empty = t1f;
      s.profile = JointProfile{Curve::FromRates({{t1a, t1f, m2 * g}}),
                               Curve::FromRates({{t2a, 0.0, m2 * g}})};
      return s;
    }
    case RegimeTag::kHasEqI2:
    case RegimeTag::kHasEqII3: {
      const double g = g1;
      ConvexSetDescriptor d;
      d.ta = -(1.0 / g - 1.0) * (l1 + l2) / m2;
      d.tf = (l1 + l2) / m2;
      d.window_start = 0.0;
      d.pre_rate2 = m2 * g;
      d.total_rate = m2 * g;
      if (s.tag == RegimeTag::kHasEqI2) {
        d.capped_class = 1;
        d.cap = m1;
      } else {
        d.capped_class = 2;
        d.cap = INFINITY;
      }
      d.mass1 = l1;
      d.mass2 = l2;
      b.ta = d.ta;
      b.tf = d.tf;
      b.t2a = d.ta;
      s.convex_set = d;
      AttachExtremes(s);
      return s;
    }
    default:
      break;
  }
  throw std::logic_error("solve_has: unhandled regime " + to_string(s.tag));
}

EapSolution solve(const GameParams& p) {
  p.validate();
  switch (p.topology) {
    case Topology::kHds:
      return solve_hds(p);
    case Topology::kHas:
      return solve_has(p);
    default:
      return solve_single_queue(p);
  }
}

JointProfile sample_convex_eap(const ConvexSetDescriptor& d,
                               std::uint64_t seed) {
  const double w0 = d.window_start;
  const double len = d.tf - w0;
  const double cmax = d.effective_cap();
  const double mc = d.window_mass(d.capped_class);
  const double mo = d.window_mass(3 - d.capped_class);
  const double tol = 1e-12 * (1.0 + d.mass1 + d.mass2);
  if (!(len > 0.0) || !(cmax > 0.0) || mc < -tol || mo < -tol ||
      mc > cmax * len + tol ||
      std::abs(mc + mo - d.total_rate * len) > 1e-9 * (1.0 + mc + mo)) {
    throw std::logic_error("sample_convex_eap: infeasible descriptor");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cuts{w0, d.tf};
  for (int k = 1; k < kSamplerPieces; ++k) cuts.push_back(w0 + len * unit(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> rates(kSamplerPieces);
  for (double& r : rates) r = cmax * unit(rng);

  // Repair the capped class to its exact window mass: pull rates toward the
  // ceiling if short, scale them down if over. Both keep 0 <= r <= cmax.
  double placed = 0.0;
  for (int k = 0; k < kSamplerPieces; ++k) {
    placed += rates[k] * (cuts[k + 1] - cuts[k]);
  }
  if (placed < mc) {
    const double theta = (mc - placed) / (cmax * len - placed);
    for (double& r : rates) r += theta * (cmax - r);
  } else if (placed > 0.0) {
    for (double& r : rates) r *= mc / placed;
  }
  std::vector<RatePiece> capped;
  for (int k = 0; k < kSamplerPieces; ++k) {
    capped.push_back({cuts[k], cuts[k + 1], std::clamp(rates[k], 0.0, cmax)});
  }
  return WindowProfile(d, capped);
}

}  // namespace fluidq
