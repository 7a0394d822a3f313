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

#include "fluidq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluidq {
namespace {

constexpr double kTieTolerance = 1e-12;

double CumulativeDistance(const DiscreteProfile& a, const DiscreteProfile& b,
                          int i) {
  double ca = 0.0, cb = 0.0, d = 0.0;
  const auto& ma = a.mass[i - 1];
  const auto& mb = b.mass[i - 1];
  for (size_t k = 0; k < ma.size(); ++k) {
    ca += ma[k];
    cb += mb[k];
    d = std::max(d, std::abs(ca - cb));
  }
  return d;
}

}  // namespace

double DiscreteProfile::total(int i) const {
  double s = 0.0;
  for (double m : mass[i - 1]) s += m;
  return s;
}

Curve DiscreteProfile::to_curve(int i) const {
  const auto& m = mass[i - 1];
  std::vector<std::pair<double, double>> pts;
  pts.reserve(m.size() + 1);
  double c = 0.0;
  pts.emplace_back(t0, 0.0);
  // Runs of equal slot masses are one linear piece; slots the best response
  // never picked all carry the same mass, so this keeps the curve short.
  for (size_t k = 0; k < m.size(); ++k) {
    c += m[k];
    if (k + 1 < m.size() && m[k + 1] == m[k]) continue;
    pts.emplace_back(t0 + (k + 1) * dt, c);
  }
  return Curve::FromPoints(pts);
}

std::array<double, 2> default_window(const GameParams& p) {
  const double gmin = std::min(p.gamma1, p.gamma2);
  const double mmin = std::min(p.mu1, p.mu2);
  const double total = p.lambda1 + p.lambda2;
  return {-(1.0 / gmin) * total / mmin - 1.0, total / mmin + 1.0};
}

DiscreteProfile make_grid(const GameParams& p, const OracleConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("oracle dt must be > 0");
  const auto w = default_window(p);
  const double lo = cfg.t_lo.value_or(w[0]);
  const double hi = cfg.t_hi.value_or(w[1]);
  if (!(hi > lo)) throw std::invalid_argument("oracle window is empty");
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / cfg.dt - 1e-9)));
  DiscreteProfile d;
  d.t0 = lo;
  d.dt = cfg.dt;
  d.mass[0].assign(n, 0.0);
  d.mass[1].assign(n, 0.0);
  return d;
}

DiscreteProfile discretize(const Curve& f1, const Curve& f2, double t0,
                           double dt, int slots) {
  DiscreteProfile d;
  d.t0 = t0;
  d.dt = dt;
  const Curve* f[2] = {&f1, &f2};
  for (int i = 0; i < 2; ++i) {
    d.mass[i].resize(slots);
    for (int k = 0; k < slots; ++k) {
      const double a = k == 0 ? f[i]->initial_value() : f[i]->eval(t0 + k * dt);
      const double b = k == slots - 1 ? f[i]->final_value()
                                      : f[i]->eval(t0 + (k + 1) * dt);
      d.mass[i][k] = b - a;
    }
  }
  return d;
}

DiscreteProfile best_response(const DiscreteProfile& current,
                              const GameParams& p, int i) {
  if (i != 1 && i != 2) throw std::out_of_range("class index must be 1 or 2");
  const NetworkTrace tr =
      compose(current.to_curve(1), current.to_curve(2), p);
  const int n = current.slots();
  std::vector<double> mids(n);
  for (int k = 0; k < n; ++k) mids[k] = current.slot_mid(k);
  const std::vector<double> cost = tr.costs(i, mids);
  const double best = *std::min_element(cost.begin(), cost.end());
  const double cut = best + kTieTolerance * std::max(1.0, std::abs(best));
  std::vector<int> ties;
  for (int k = 0; k < n; ++k) {
    if (cost[k] <= cut) ties.push_back(k);
  }
  DiscreteProfile out = current;
  auto& m = out.mass[i - 1];
  std::fill(m.begin(), m.end(), 0.0);
  const double share = p.lambda(i) / static_cast<double>(ties.size());
  for (int k : ties) m[k] = share;
  return out;
}

OracleResult solve_fixed_point(const GameParams& p, const OracleConfig& cfg) {
  p.validate();
  OracleResult res;
  DiscreteProfile x = make_grid(p, cfg);
  const int n = x.slots();
  for (int i = 1; i <= 2; ++i) {
    std::fill(x.mass[i - 1].begin(), x.mass[i - 1].end(), p.lambda(i) / n);
  }
  for (int k = 1; k <= cfg.max_iters; ++k) {
    const double w = 1.0 / (k + 1);
    double change = 0.0;
    for (int i = 1; i <= 2; ++i) {
      if (p.lambda(i) == 0.0) continue;
      const DiscreteProfile br = best_response(x, p, i);
      DiscreteProfile next = x;
      auto& m = next.mass[i - 1];
      const auto& b = br.mass[i - 1];
      for (int s = 0; s < n; ++s) m[s] += w * (b[s] - m[s]);
      change = std::max(change, CumulativeDistance(x, next, i));
      x = std::move(next);
    }
    res.diagnostics.iters = k;
    res.diagnostics.final_change = change;
    if (change < cfg.stop_tol) {
      res.diagnostics.converged = true;
      break;
    }
  }
  res.profile = std::move(x);
  return res;
}

double kolmogorov_distance(const Curve& a, const Curve& b) {
  if (std::abs(a.final_value() - b.final_value()) > 1e-6 ||
      std::abs(a.initial_value() - b.initial_value()) > 1e-6) {
    throw std::invalid_argument("kolmogorov_distance: total masses differ");
  }
  std::vector<double> ts;
  for (const Knot& k : a.knots()) ts.push_back(k.t);
  for (const Knot& k : b.knots()) ts.push_back(k.t);
  double d = 0.0;
  for (double t : ts) {
    d = std::max(d, std::abs(a.eval(t) - b.eval(t)));
    d = std::max(d, std::abs(a.eval_left(t) - b.eval_left(t)));
  }
  return d;
}

double kolmogorov_distance(const DiscreteProfile& a, int i, const Curve& b) {
  return kolmogorov_distance(a.to_curve(i), b);
}

}  // namespace fluidq
