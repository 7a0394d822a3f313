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

#ifndef FLUIDQ_ORACLE_HPP_
#define FLUIDQ_ORACLE_HPP_

#include <array>
#include <optional>
#include <vector>

#include "fluidq/curve.hpp"
#include "fluidq/network.hpp"

namespace fluidq {

// Time-discretized profile. Slot k covers [t0 + k dt, t0 + (k+1) dt] and its
// mass arrives uniformly over the slot.
struct DiscreteProfile {
  double t0 = 0.0;
  double dt = 0.01;
  std::array<std::vector<double>, 2> mass;

  [[nodiscard]] int slots() const { return static_cast<int>(mass[0].size()); }
  [[nodiscard]] double slot_start(int k) const { return t0 + k * dt; }
  [[nodiscard]] double slot_mid(int k) const { return t0 + (k + 0.5) * dt; }
  [[nodiscard]] double total(int i) const;
  // Cumulative arrivals of class i as a continuous piecewise-linear curve.
  [[nodiscard]] Curve to_curve(int i) const;
};

struct OracleConfig {
  double dt = 0.01;
  // Window; derived from the parameters when absent.
  std::optional<double> t_lo;
  std::optional<double> t_hi;
  int max_iters = 3000;
  // Stop once one sweep moves no class by more than this (Kolmogorov).
  double stop_tol = 0.0;
};

struct OracleDiagnostics {
  int iters = 0;
  double final_change = 0.0;
  bool converged = false;
};

struct OracleResult {
  DiscreteProfile profile;
  OracleDiagnostics diagnostics;
};

// A window containing every closed-form support boundary, padded by 1.
[[nodiscard]] std::array<double, 2> default_window(const GameParams& p);

// Zero profile on the config's grid.
[[nodiscard]] DiscreteProfile make_grid(const GameParams& p,
                                        const OracleConfig& cfg);
// Projection of a cumulative curve onto the grid.
[[nodiscard]] DiscreteProfile discretize(const Curve& f1, const Curve& f2,
                                         double t0, double dt, int slots);

// Puts all of class i's mass on the slots of least cost against `current`
// (both classes, own congestion included). Slot cost is read at the slot
// midpoint. Ties within 1e-12 share the mass equally.
[[nodiscard]] DiscreteProfile best_response(const DiscreteProfile& current,
                                            const GameParams& p, int i);

// Fictitious play: x <- x + (BR(x) - x)/(k+1), class 1 then class 2 in each
// sweep k = 1, 2, ..., starting from the uniform profile on the window.
[[nodiscard]] OracleResult solve_fixed_point(const GameParams& p,
                                             const OracleConfig& cfg);

// sup_t |a(t) - b(t)| over the union of breakpoints, both one-sided limits.
// Throws std::invalid_argument if the total masses differ by more than 1e-6.
[[nodiscard]] double kolmogorov_distance(const Curve& a, const Curve& b);
[[nodiscard]] double kolmogorov_distance(const DiscreteProfile& a, int i,
                                         const Curve& b);

}  // namespace fluidq

#endif  // FLUIDQ_ORACLE_HPP_
