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

#ifndef FLUIDQ_EAP_SOLVER_HPP_
#define FLUIDQ_EAP_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidq/curve.hpp"
#include "fluidq/network.hpp"

namespace fluidq {

// One tag per parameter point. Ties on case thresholds follow the inclusive
// and exclusive inequalities of the closed-form case statements.
enum class RegimeTag {
  kSq,
  kHdsReduce,
  kHds1,
  kHds2a,
  kHds2b,
  kHds3a,
  kHds3b,
  kHdsEq1,
  kHdsEq2,
  kHasI1a,
  kHasI1b,
  kHasI2a,
  kHasI2b,
  kHasII1a,
  kHasII1b,
  kHasII2a,
  kHasII2b,
  kHasII2c,
  kHasII3a,
  kHasII3b,
  kHasII3c,
  kHasEqI1,
  kHasEqI2,
  kHasEqII1,
  kHasEqII2,
  kHasEqII3,
};

[[nodiscard]] std::string to_string(RegimeTag tag);
[[nodiscard]] RegimeTag parse_regime(const std::string& name);
[[nodiscard]] const std::vector<RegimeTag>& all_regimes();
// Equal-preference regimes whose equilibria form a convex set.
[[nodiscard]] bool is_convex_regime(RegimeTag tag);

// Support endpoints of each class, the joint window (convex regimes) and the
// first time queue 2 empties (where the closed form names it). Absent
// entries have no meaning for the regime or belong to a zero-mass class.
struct SupportBoundaries {
  std::optional<double> t1a, t1f, t2a, t2f;
  std::optional<double> ta, tf, t_empty;
};

struct JointProfile {
  Curve f1;
  Curve f2;

  [[nodiscard]] const Curve& operator[](int i) const {
    return i == 1 ? f1 : f2;
  }
};

// Equilibrium set of the equal-preference regimes. On [ta, window_start]
// class 1 is idle and class 2 arrives at pre_rate2. On [window_start, tf]
// the two rates sum to total_rate and capped_class never exceeds cap.
struct ConvexSetDescriptor {
  double ta = 0.0;
  double tf = 0.0;
  double window_start = 0.0;
  double pre_rate2 = 0.0;
  double total_rate = 0.0;
  int capped_class = 2;
  double cap = 0.0;
  double mass1 = 0.0;
  double mass2 = 0.0;

  // Capped class rate ceiling inside the window.
  [[nodiscard]] double effective_cap() const;
  // Capped class mass that must land inside the window.
  [[nodiscard]] double window_mass(int i) const;
};

struct EapSolution {
  RegimeTag tag = RegimeTag::kSq;
  SupportBoundaries boundaries;
  std::optional<JointProfile> profile;
  std::optional<ConvexSetDescriptor> convex_set;
  // For convex regimes: the member where class 1 (resp. class 2) takes the
  // window first at its highest feasible rate.
  std::optional<JointProfile> class1_first;
  std::optional<JointProfile> class2_first;
  // Class-1 rate switch of the two-rate HAS profiles, read off the engine's
  // departure map, and the same point from the closed form.
  std::optional<double> split_point;
  std::optional<double> split_point_closed_form;
};

[[nodiscard]] RegimeTag classify_hds(const GameParams& p);
[[nodiscard]] RegimeTag classify_has(const GameParams& p);
// Dispatches on topology; any zero-mass class gives kSq.
[[nodiscard]] RegimeTag classify(const GameParams& p);

[[nodiscard]] EapSolution solve_single_queue(const GameParams& p);
[[nodiscard]] EapSolution solve_hds(const GameParams& p);
[[nodiscard]] EapSolution solve_has(const GameParams& p);
[[nodiscard]] EapSolution solve(const GameParams& p);

// A seeded member of the set: random 64-piece rate split of the window,
// repaired to the exact masses. Throws std::logic_error if infeasible.
[[nodiscard]] JointProfile sample_convex_eap(const ConvexSetDescriptor& d,
                                             std::uint64_t seed);

// Case thresholds on lambda1 (other parameters fixed) separating the
// continuity pairs HDS 2a/2b, HDS 3a/3b and HAS-II 2b/2c.
[[nodiscard]] double hds_case2_threshold(const GameParams& p);
[[nodiscard]] double hds_case3_threshold(const GameParams& p);
[[nodiscard]] double has_case2bc_threshold(const GameParams& p);

}  // namespace fluidq

#endif  // FLUIDQ_EAP_SOLVER_HPP_
