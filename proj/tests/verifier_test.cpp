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


#include <cmath>
#include <random>

#include "doctest.h"
#include "fluidq/eap_solver.hpp"
#include "fluidq/verifier.hpp"
#include "support/regime_sampler.hpp"

namespace fluidq {
namespace {

using doctest::Approx;

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

const GameParams kHds = Params(Topology::kHds, 2, 1, 2, 1, 0.3, 0.8);

bool HasCheck(const VerificationReport& r, const std::string& name, bool passed) {
  for (const CheckResult& c : r.checks) {
    if (c.name == name) return c.passed == passed;
  }
  return false;
}

TEST_CASE("HDS case 1 passes") {
  const EapSolution s = solve(kHds);
  const VerificationReport r = check_equilibrium(s.profile->f1, s.profile->f2, kHds);
  CHECK(r.passed);
  CHECK(r.iso_cost_deviation[0] <= 1e-12);
  CHECK(r.iso_cost_deviation[1] <= 1e-12);
  CHECK(r.support_cost[0] == Approx(0.775));
  CHECK(r.support_cost[1] == Approx(0.4));
}

TEST_CASE("late class 2 is caught") {
  const EapSolution s = solve(kHds);
  const Curve late = shift(s.profile->f2, 0.1);
  const VerificationReport r = check_equilibrium(s.profile->f1, late, kHds);
  CHECK_FALSE(r.passed);
  CHECK(r.deviation_gain[1] > 0.0);
  CHECK(r.mass_error[1] <= 1e-12);
}

TEST_CASE("mass mismatch is a failure, not an exception") {
  const EapSolution s = solve(kHds);
  const VerificationReport r =
      check_equilibrium(s.profile->f1, scale(s.profile->f2, 0.5), kHds);
  CHECK_FALSE(r.passed);
  CHECK(r.mass_error[1] == Approx(0.5));
}

TEST_CASE("empty game passes vacuously") {
  const GameParams p = Params(Topology::kHds, 2, 1, 0, 0, 0.3, 0.8);
  const VerificationReport r = check_equilibrium(Curve(), Curve(), p);
  CHECK(r.passed);
  CHECK(r.social_cost == 0.0);
  CHECK(social_cost(Curve(), Curve(), p) == 0.0);
}

TEST_CASE("social cost of an equilibrium is mass times support cost") {
  const EapSolution s = solve(kHds);
  CHECK(social_cost(s.profile->f1, s.profile->f2, kHds) ==
        Approx(2.0 * 0.775 + 1.0 * 0.4).epsilon(1e-12));
}

TEST_CASE("social cost integrates cost against a jump") {
  // Unit batch at t = 1 into an empty single queue with mu = 1: the batch
  // waits 1/2 on average, departs at 1.5 on average.
  const GameParams p = Params(Topology::kSingleQueue, 1, 1, 1, 0, 0.4, 0.5);
  const Curve batch({{1.0, 0.0, 1.0}});
  CHECK(social_cost(batch, Curve(), p) == Approx(0.4 * 0.5 + 0.6 * 1.5));
}

TEST_CASE("audits on worked examples") {
  const EapSolution hds = solve(kHds);
  const VerificationReport a = audit_structure(hds, kHds);
  CHECK(a.passed);
  CHECK(HasCheck(a, "overlap_criterion", true));
  CHECK(HasCheck(a, "queue2_idle_at_class2_exit", true));

  const GameParams has = Params(Topology::kHas, 1, 2, 1, 2, 0.2, 0.5);
  const VerificationReport b = audit_structure(solve(has), has);
  CHECK(b.passed);
  CHECK(HasCheck(b, "class2_interval_count", true));
  CHECK(HasCheck(b, "disjoint_service_criterion", true));
}

TEST_CASE("HDS 3a starts class 2 before class 1") {
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 20; ++rep) {
    const GameParams p = testing::SampleRegime(RegimeTag::kHds3a, rng);
    const EapSolution s = solve(p);
    CHECK(*s.boundaries.t1a > *s.boundaries.t2a);
    const VerificationReport r = audit_structure(s, p);
    CHECK(HasCheck(r, "boundary_order", true));
  }
}

TEST_CASE("audit flags a tampered solution") {
  EapSolution s = solve(kHds);
  s.profile->f2 = shift(s.profile->f2, -1.0);
  CHECK_FALSE(audit_structure(s, kHds).passed);
}

TEST_CASE("overlap measure") {
  Support a{{{0.0, 1.0}, {2.0, 3.0}}};
  Support b{{{0.5, 2.5}}};
  CHECK(overlap_measure(a, b) == Approx(1.0));
  CHECK(overlap_measure(a, Support{}) == 0.0);
}

// Properties.

TEST_CASE("property: passing is monotone in eps") {
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 60; ++rep) {
    const GameParams p = testing::SampleUnequal(rep % 2 ? Topology::kHds : Topology::kHas, rng);
    const EapSolution s = solve(p);
    const double d = testing::Uniform(rng, -0.2, 0.2);
    const Curve f2 = shift(s.profile->f2, d);
    bool passed = false;
    for (double eps : {1e-12, 1e-9, 1e-6, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
      const bool now = check_equilibrium(s.profile->f1, f2, p, eps).passed;
      CHECK((!passed || now));
      passed = now;
    }
    CHECK(passed);
  }
}

TEST_CASE("property: reports are deterministic") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    const GameParams p = testing::SampleUnequal(Topology::kHas, rng);
    const EapSolution s = solve(p);
    const VerificationReport a = check_equilibrium(s.profile->f1, s.profile->f2, p);
    const VerificationReport b = check_equilibrium(s.profile->f1, s.profile->f2, p);
    CHECK(a.iso_cost_deviation == b.iso_cost_deviation);
    CHECK(a.deviation_gain == b.deviation_gain);
    CHECK(a.social_cost == b.social_cost);
    CHECK(a.checks.size() == b.checks.size());
  }
}

TEST_CASE("property: social cost equals mass times support cost at equilibrium") {
  std::mt19937_64 rng(54);
  for (int rep = 0; rep < 60; ++rep) {
    const GameParams p = testing::SampleUnequal(rep % 2 ? Topology::kHds : Topology::kHas, rng);
    const EapSolution s = solve(p);
    const VerificationReport r = check_equilibrium(s.profile->f1, s.profile->f2, p);
    REQUIRE(r.passed);
    const NetworkTrace tr = compose(s.profile->f1, s.profile->f2, p);
    const double want = p.lambda1 * tr.cost(1, support(s.profile->f1).lo()) +
                        p.lambda2 * tr.cost(2, support(s.profile->f2).hi());
    CHECK(std::abs(r.social_cost - want) <= 1e-9 * std::max(1.0, want));
  }
}

TEST_CASE("property: convex members share one social cost") {
  std::mt19937_64 rng(55);
  for (RegimeTag tag : {RegimeTag::kHdsEq2, RegimeTag::kHasEqI2, RegimeTag::kHasEqII3}) {
    CAPTURE(to_string(tag));
    for (int rep = 0; rep < 5; ++rep) {
      const GameParams p = testing::SampleRegime(tag, rng);
      const EapSolution s = solve(p);
      const double ref = social_cost(s.class1_first->f1, s.class1_first->f2, p);
      CHECK(std::abs(social_cost(s.class2_first->f1, s.class2_first->f2, p) - ref) <= 1e-9);
      for (std::uint64_t seed : {1u, 2u}) {
        const JointProfile m = sample_convex_eap(*s.convex_set, seed);
        CHECK(check_equilibrium(m.f1, m.f2, p).passed);
        CHECK(std::abs(social_cost(m.f1, m.f2, p) - ref) <= 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace fluidq
