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

#include "fluidq/fluid_queue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fluidq {
namespace {

void CheckRate(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("service rate must be positive and finite");
  }
}

double Snap(double q) { return q < kEmptyQueue ? 0.0 : q; }

Support EngagedFromQueue(const Curve& q) {
  const std::vector<Knot>& k = q.knots();
  Support s;
  auto add = [&s](double lo, double hi) {
    if (!s.intervals.empty() && lo <= s.intervals.back().hi) {
      s.intervals.back().hi = std::max(s.intervals.back().hi, hi);
    } else {
      s.intervals.push_back({lo, hi});
    }
  };
  if (k.front().left > 0.0) add(-INFINITY, k.front().t);
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    if (k[i].right > 0.0 || k[i + 1].left > 0.0) add(k[i].t, k[i + 1].t);
  }
  if (k.back().right > 0.0 || q.right_slope() > 0.0) add(k.back().t, INFINITY);
  return s;
}

}  // namespace

double QueueTrace::waiting(double t) const {
  return (q.eval(t) + q.eval_left(t)) / (2.0 * mu) + std::max(0.0, -t);
}

Curve queue_length(const Curve& a, double mu) {
  CheckRate(mu);
  if (!a.has_finite_tails()) {
    throw std::invalid_argument("arrival curve must have finite total mass");
  }
  const std::vector<Knot>& ak = a.knots();
  std::vector<Knot> out;
  out.reserve(ak.size() + 8);

  // Before the opening nothing is served.
  for (const Knot& k : ak) {
    if (k.t < 0.0) out.push_back({k.t, Snap(k.left), Snap(k.right)});
  }

  // From 0 on, track the running sup m of d(s) = mu s - A(s). Between
  // breakpoints d is linear, so the sup can only be overtaken once per piece.
  std::vector<double> times{0.0};
  for (const Knot& k : ak) {
    if (k.t > 0.0) times.push_back(k.t);
  }
  CurveCursor ca(a);
  double m = std::max(0.0, -a.eval(0.0));
  out.push_back({0.0, Snap(a.eval_left(0.0)), Snap(a.eval(0.0) + m)});
  for (size_t i = 0; i + 1 < times.size(); ++i) {
    const double t0 = times[i];
    const double t1 = times[i + 1];
    const double a0 = ca.eval(t0);
    const double a1_left = ca.eval_left(t1);
    const double a1 = ca.eval(t1);
    const double d0 = mu * t0 - a0;
    const double d1 = mu * t1 - a1_left;
    if (d1 > m && d0 < m) {
      const double tc = t0 + (m - d0) / (d1 - d0) * (t1 - t0);
      out.push_back({tc, 0.0, 0.0});
    }
    m = std::max(m, d1);
    const double left = Snap(a1_left - mu * t1 + m);
    const double right = Snap(a1 - mu * t1 + m);
    out.push_back({t1, left, right});
  }
  // Flat right tail of A: the backlog drains at rate mu.
  const double t_last = times.back();
  const double q_last = out.back().right;
  if (q_last > 0.0) out.push_back({t_last + q_last / mu, 0.0, 0.0});
  return Curve(std::move(out));
}

double waiting_time(const Curve& a, double mu, double t) {
  CheckRate(mu);
  const Curve q = queue_length(a, mu);
  return (q.eval(t) + q.eval_left(t)) / (2.0 * mu) + std::max(0.0, -t);
}

Curve departure_map(const Curve& a, double mu) {
  return sum(scale(queue_length(a, mu), 1.0 / mu), Curve::Ramp());
}

Support engaged_set(const Curve& a, double mu) {
  return EngagedFromQueue(queue_length(a, mu));
}

QueueTrace analyze_queue(const Curve& a, double mu) {
  QueueTrace tr;
  tr.arrivals = a;
  tr.mu = mu;
  tr.q = queue_length(a, mu);
  tr.tau = sum(scale(tr.q, 1.0 / mu), Curve::Ramp());
  tr.engaged = EngagedFromQueue(tr.q);
  return tr;
}

}  // namespace fluidq
