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

#ifndef FLUIDQ_VERIFIER_HPP_
#define FLUIDQ_VERIFIER_HPP_

#include <array>
#include <string>
#include <vector>

#include "fluidq/curve.hpp"
#include "fluidq/eap_solver.hpp"
#include "fluidq/network.hpp"

namespace fluidq {

inline constexpr double kDefaultEps = 1e-9;
// Uniform points added to the kink set when scanning for deviations.
inline constexpr int kScanGridPoints = 1000;

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

// Per-class arrays are indexed by class - 1.
struct VerificationReport {
  double eps = kDefaultEps;
  std::array<double, 2> iso_cost_deviation{};
  std::array<double, 2> deviation_gain{};
  std::array<double, 2> mass_error{};
  std::array<double, 2> support_cost{};
  std::vector<CheckResult> checks;
  double social_cost = 0.0;
  bool passed = true;

  void add(CheckResult c);
};

// Passes iff every class has mass within eps of its lambda, cost spread
// within eps on its own support, and no time off the support cheaper by
// more than eps. Costs are evaluated at every kink of the trace plus a
// uniform grid over [Ta - span, Tf + span] and one point past the time the
// network must be empty.
[[nodiscard]] VerificationReport check_equilibrium(const Curve& f1,
                                                   const Curve& f2,
                                                   const GameParams& p,
                                                   double eps = kDefaultEps);

// Sum over classes of the integral of C_i against dF_i.
[[nodiscard]] double social_cost(const Curve& f1, const Curve& f2,
                                 const GameParams& p);
[[nodiscard]] double social_cost(const NetworkTrace& trace);

// Structural checks on a solver output: masses, interval supports, rate law,
// idle queues, boundary ordering, overlap and disjoint-service criteria,
// class-2 interval count and split-point agreement. Only checks that apply
// to the solution's topology and regime are run.
[[nodiscard]] VerificationReport audit_structure(const EapSolution& solution,
                                                 const GameParams& p,
                                                 double tol = kDefaultEps);

// Measure of the intersection of two supports.
[[nodiscard]] double overlap_measure(const Support& a, const Support& b);

// Measure of times at which queue 2 of a HAS trace serves both classes.
[[nodiscard]] double shared_service_measure(const NetworkTrace& has_trace);

}  // namespace fluidq

#endif  // FLUIDQ_VERIFIER_HPP_
