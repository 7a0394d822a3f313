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

// JSON interchange. Curves are arrays of knots, {"t", "v"} where continuous
// and {"t", "v_left", "v_right"} at jumps. A curve with a sloped tail is an
// object {"knots": [...], "left_slope": a, "right_slope": b}. Malformed
// input raises std::invalid_argument.

#ifndef FLUIDQ_IO_HPP_
#define FLUIDQ_IO_HPP_

#include <array>
#include <optional>
#include <string>

#include "json.hpp"

#include "fluidq/curve.hpp"
#include "fluidq/eap_solver.hpp"
#include "fluidq/network.hpp"
#include "fluidq/oracle.hpp"
#include "fluidq/verifier.hpp"

namespace fluidq {

using Json = nlohmann::json;

[[nodiscard]] Json curve_to_json(const Curve& c);
[[nodiscard]] Curve curve_from_json(const Json& j);

// Accepts gamma1/gamma2 or alpha1/beta1 and alpha2/beta2 (not both for one
// class). Keys outside the parameter set are ignored here.
[[nodiscard]] GameParams params_from_json(const Json& j);
[[nodiscard]] Json params_to_json(const GameParams& p);

[[nodiscard]] Json profile_to_json(const JointProfile& prof);
[[nodiscard]] JointProfile profile_from_json(const Json& j);

// {tag, params, boundaries, profiles, convex_set, split_point,
//  split_point_closed_form}. Absent values are null.
[[nodiscard]] Json solution_to_json(const EapSolution& s, const GameParams& p);
[[nodiscard]] EapSolution solution_from_json(const Json& j);

[[nodiscard]] Json report_to_json(const VerificationReport& r);

// {iters, final_change, converged, distance_to_reference?}.
[[nodiscard]] Json diagnostics_to_json(
    const OracleDiagnostics& d,
    const std::optional<std::array<double, 2>>& distance = std::nullopt);
[[nodiscard]] Json discrete_profile_to_json(const DiscreteProfile& d);

// Whole-file helpers. Errors name the path.
[[nodiscard]] Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fluidq

#endif  // FLUIDQ_IO_HPP_
