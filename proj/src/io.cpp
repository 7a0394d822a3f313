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

#include "fluidq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fluidq {
namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw std::invalid_argument("malformed JSON: " + what);
}

double Number(const Json& j, const char* key) {
  if (!j.contains(key)) Malformed(std::string("missing \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) Malformed(std::string("\"") + key + "\" is not a number");
  return v.get<double>();
}

// JSON has no infinities; they travel as null.
Json Finite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json Optional(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> OptionalFrom(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return Number(j, key);
}

double ClassGamma(const Json& j, int i) {
  const std::string n = std::to_string(i);
  const std::string g = "gamma" + n, a = "alpha" + n, b = "beta" + n;
  const bool has_g = j.contains(g);
  const bool has_ab = j.contains(a) || j.contains(b);
  if (has_g && has_ab) Malformed("give " + g + " or " + a + "/" + b + ", not both");
  if (has_ab) {
    return GameParams::GammaFromCosts(Number(j, a.c_str()), Number(j, b.c_str()));
  }
  return Number(j, g.c_str());
}

}  // namespace

Json curve_to_json(const Curve& c) {
  Json knots = Json::array();
  for (const Knot& k : c.knots()) {
    if (k.left == k.right) {
      knots.push_back({{"t", k.t}, {"v", k.right}});
    } else {
      knots.push_back({{"t", k.t}, {"v_left", k.left}, {"v_right", k.right}});
    }
  }
  if (c.has_finite_tails()) return knots;
  return {{"knots", knots},
          {"left_slope", c.left_slope()},
          {"right_slope", c.right_slope()}};
}

Curve curve_from_json(const Json& j) {
  const Json* arr = &j;
  double ls = 0.0, rs = 0.0;
  if (j.is_object()) {
    if (!j.contains("knots")) Malformed("curve object needs \"knots\"");
    arr = &j.at("knots");
    if (j.contains("left_slope")) ls = Number(j, "left_slope");
    if (j.contains("right_slope")) rs = Number(j, "right_slope");
  }
  if (!arr->is_array() || arr->empty()) {
    Malformed("curve must be a non-empty array of knots");
  }
  std::vector<Knot> knots;
  for (const Json& k : *arr) {
    if (!k.is_object()) Malformed("knot is not an object");
    const double t = Number(k, "t");
    if (k.contains("v")) {
      const double v = Number(k, "v");
      knots.push_back({t, v, v});
    } else {
      knots.push_back({t, Number(k, "v_left"), Number(k, "v_right")});
    }
  }
  return Curve(std::move(knots), ls, rs);
}

GameParams params_from_json(const Json& j) {
  if (!j.is_object()) Malformed("parameters must be an object");
  GameParams p;
  if (!j.contains("topology") || !j.at("topology").is_string()) {
    Malformed("missing \"topology\"");
  }
  p.topology = parse_topology(j.at("topology").get<std::string>());
  p.mu1 = Number(j, "mu1");
  p.mu2 = j.contains("mu2") ? Number(j, "mu2") : p.mu1;
  p.lambda1 = Number(j, "lambda1");
  p.lambda2 = Number(j, "lambda2");
  p.gamma1 = ClassGamma(j, 1);
  p.gamma2 = ClassGamma(j, 2);
  return p;
}

Json params_to_json(const GameParams& p) {
  return {{"topology", to_string(p.topology)},
          {"mu1", p.mu1},
          {"mu2", p.mu2},
          {"lambda1", p.lambda1},
          {"lambda2", p.lambda2},
          {"gamma1", p.gamma1},
          {"gamma2", p.gamma2}};
}

Json profile_to_json(const JointProfile& prof) {
  return {{"f1", curve_to_json(prof.f1)}, {"f2", curve_to_json(prof.f2)}};
}

JointProfile profile_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("f1") || !j.contains("f2")) {
    Malformed("profile needs \"f1\" and \"f2\"");
  }
  return {curve_from_json(j.at("f1")), curve_from_json(j.at("f2"))};
}

Json solution_to_json(const EapSolution& s, const GameParams& p) {
  const SupportBoundaries& b = s.boundaries;
  Json out;
  out["tag"] = to_string(s.tag);
  out["params"] = params_to_json(p);
  out["boundaries"] = {{"t1a", Optional(b.t1a)}, {"t1f", Optional(b.t1f)},
                       {"t2a", Optional(b.t2a)}, {"t2f", Optional(b.t2f)},
                       {"ta", Optional(b.ta)},   {"tf", Optional(b.tf)},
                       {"t_empty", Optional(b.t_empty)}};
  out["profiles"] = s.profile ? profile_to_json(*s.profile) : Json(nullptr);
  if (s.convex_set) {
    const ConvexSetDescriptor& d = *s.convex_set;
    Json c = {{"ta", d.ta},
              {"tf", d.tf},
              {"window_start", d.window_start},
              {"pre_rate2", d.pre_rate2},
              {"total_rate", d.total_rate},
              {"capped_class", d.capped_class},
              {"cap", Finite(d.cap)},
              {"mass1", d.mass1},
              {"mass2", d.mass2}};
    Json ext = Json::object();
    if (s.class1_first) ext["class1_first"] = profile_to_json(*s.class1_first);
    if (s.class2_first) ext["class2_first"] = profile_to_json(*s.class2_first);
    c["extreme_profiles"] = ext;
    out["convex_set"] = c;
  } else {
    out["convex_set"] = nullptr;
  }
  out["split_point"] = Optional(s.split_point);
  out["split_point_closed_form"] = Optional(s.split_point_closed_form);
  return out;
}

EapSolution solution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("tag") || !j.at("tag").is_string()) {
    Malformed("solution needs a string \"tag\"");
  }
  EapSolution s;
  s.tag = parse_regime(j.at("tag").get<std::string>());
  if (j.contains("boundaries") && j.at("boundaries").is_object()) {
    const Json& b = j.at("boundaries");
    SupportBoundaries& o = s.boundaries;
    o.t1a = OptionalFrom(b, "t1a");
    o.t1f = OptionalFrom(b, "t1f");
    o.t2a = OptionalFrom(b, "t2a");
    o.t2f = OptionalFrom(b, "t2f");
    o.ta = OptionalFrom(b, "ta");
    o.tf = OptionalFrom(b, "tf");
    o.t_empty = OptionalFrom(b, "t_empty");
  }
  if (j.contains("profiles") && !j.at("profiles").is_null()) {
    s.profile = profile_from_json(j.at("profiles"));
  }
  if (j.contains("convex_set") && !j.at("convex_set").is_null()) {
    const Json& c = j.at("convex_set");
    ConvexSetDescriptor d;
    d.ta = Number(c, "ta");
    d.tf = Number(c, "tf");
    d.window_start = Number(c, "window_start");
    d.pre_rate2 = Number(c, "pre_rate2");
    d.total_rate = Number(c, "total_rate");
    d.capped_class = static_cast<int>(Number(c, "capped_class"));
    d.cap = OptionalFrom(c, "cap").value_or(INFINITY);
    d.mass1 = Number(c, "mass1");
    d.mass2 = Number(c, "mass2");
    s.convex_set = d;
    if (c.contains("extreme_profiles")) {
      const Json& e = c.at("extreme_profiles");
      if (e.contains("class1_first")) {
        s.class1_first = profile_from_json(e.at("class1_first"));
      }
      if (e.contains("class2_first")) {
        s.class2_first = profile_from_json(e.at("class2_first"));
      }
    }
  }
  s.split_point = OptionalFrom(j, "split_point");
  s.split_point_closed_form = OptionalFrom(j, "split_point_closed_form");
  return s;
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  auto pair = [](const std::array<double, 2>& a) {
    return Json::array({Finite(a[0]), Finite(a[1])});
  };
  return {{"passed", r.passed},
          {"eps", r.eps},
          {"iso_cost_deviation", pair(r.iso_cost_deviation)},
          {"deviation_gain", pair(r.deviation_gain)},
          {"mass_error", pair(r.mass_error)},
          {"support_cost", pair(r.support_cost)},
          {"social_cost", Finite(r.social_cost)},
          {"checks", checks}};
}

Json diagnostics_to_json(const OracleDiagnostics& d,
                         const std::optional<std::array<double, 2>>& distance) {
  Json out = {{"iters", d.iters},
              {"final_change", d.final_change},
              {"converged", d.converged}};
  if (distance) out["distance_to_reference"] = {(*distance)[0], (*distance)[1]};
  return out;
}

Json discrete_profile_to_json(const DiscreteProfile& d) {
  return {{"t0", d.t0},
          {"dt", d.dt},
          {"slots", d.slots()},
          {"mass1", d.mass[0]},
          {"mass2", d.mass[1]}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace fluidq
