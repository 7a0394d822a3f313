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

#include "fluidq/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fluidq/format.hpp"

namespace fluidq {
namespace {

void ExpectTopology(const GameParams& p, Topology t) {
  if (p.topology != t) {
    throw std::invalid_argument("topology mismatch: expected " + to_string(t) +
                                ", got " + to_string(p.topology));
  }
}

void AddKnotTimes(const Curve& c, std::vector<double>& out) {
  for (const Knot& k : c.knots()) out.push_back(k.t);
}

// Mass of f forwarded through a queue with departure map tau, given
// tau_inv = generalized_inverse(tau). Plain composition would pass a batch
// on as a jump; FIFO service releases it at the server rate instead, so a
// jump of f at x is spread linearly over the window where tau_inv == x.
// Before the first departure nothing has left, so the curve starts at f's
// initial value rather than at the clamped inverse.
Curve Forward(const Curve& f, const Curve& tau_inv) {
  const Curve g = compose(f, tau_inv);
  std::vector<Knot> out = g.knots();
  const std::vector<Knot>& ik = tau_inv.knots();
  out.front().left = f.initial_value();
  size_t j = 0;
  for (size_t i = 0; i + 1 < ik.size(); ++i) {
    const double x = ik[i].right;
    if (ik[i + 1].left != x) continue;
    const double lo = f.eval_left(x), hi = f.eval(x);
    if (hi <= lo) continue;
    while (j < out.size() && out[j].t < ik[i].t) ++j;
    if (j == out.size() || out[j].t != ik[i].t) continue;
    out[j].right = lo;
    size_t e = j + 1;
    while (e < out.size() && out[e].t < ik[i + 1].t) ++e;
    if (e == out.size() || out[e].t != ik[i + 1].t) continue;
    out.erase(out.begin() + j + 1, out.begin() + e);
    out[j + 1].left = hi;
  }
  return Curve(std::move(out), g.left_slope(), g.right_slope());
}

}  // namespace

std::string to_string(Topology t) {
  switch (t) {
    case Topology::kSingleQueue:
      return "SingleQueue";
    case Topology::kTandemCommon:
      return "TandemCommon";
    case Topology::kParallel:
      return "Parallel";
    case Topology::kHds:
      return "HDS";
    case Topology::kHas:
      return "HAS";
  }
  return "?";
}

Topology parse_topology(const std::string& name) {
  for (Topology t : {Topology::kSingleQueue, Topology::kTandemCommon,
                     Topology::kParallel, Topology::kHds, Topology::kHas}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown topology: " + name);
}

double GameParams::GammaFromCosts(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("alpha and beta must be positive");
  }
  return alpha / (alpha + beta);
}

void GameParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
  };
  auto open_unit = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
    }
  };
  positive(mu1, "mu1");
  positive(mu2, "mu2");
  non_negative(lambda1, "lambda1");
  non_negative(lambda2, "lambda2");
  open_unit(gamma1, "gamma1");
  open_unit(gamma2, "gamma2");
}

const QueueTrace& NetworkTrace::queue(int j) const {
  if (j == 1) return queue1;
  if (j == 2 && queue2) return *queue2;
  throw std::out_of_range("network has no queue " + std::to_string(j));
}

double NetworkTrace::class_waiting(int i, double t) const {
  double d = t;
  for (int j : routes.at(i - 1)) d += queue(j).waiting(d);
  return d - t;
}

double NetworkTrace::class_departure(int i, double t) const {
  return t + class_waiting(i, t);
}

double NetworkTrace::cost(int i, double t) const {
  const double w = class_waiting(i, t);
  const double g = params.gamma(i);
  return g * w + (1.0 - g) * (t + w);
}

std::vector<double> NetworkTrace::costs(int i,
                                        const std::vector<double>& ts) const {
  const std::vector<int>& route = routes.at(i - 1);
  std::vector<CurveCursor> cur;
  for (int j : route) cur.emplace_back(queue(j).q);
  const double g = params.gamma(i);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) {
    double d = t;
    for (size_t r = 0; r < route.size(); ++r) {
      const double mu = queue(route[r]).mu;
      d += (cur[r].eval(d) + cur[r].eval_left(d)) / (2.0 * mu) +
           std::max(0.0, -d);
    }
    const double w = d - t;
    out.push_back(g * w + (1.0 - g) * (t + w));
  }
  return out;
}

std::vector<double> NetworkTrace::kink_times() const {
  std::vector<double> out{0.0};
  AddKnotTimes(f1, out);
  AddKnotTimes(f2, out);
  AddKnotTimes(queue1.q, out);
  if (queue2) {
    AddKnotTimes(queue2->q, out);
    if (tau1_inverse) {
      for (const Knot& k : queue2->q.knots()) {
        out.push_back(tau1_inverse->eval(k.t));
        out.push_back(tau1_inverse->eval_left(k.t));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NetworkTrace compose_hds(const Curve& f1, const Curve& f2,
                         const GameParams& p) {
  ExpectTopology(p, Topology::kHds);
  NetworkTrace tr;
  tr.params = p;
  tr.f1 = f1;
  tr.f2 = f2;
  tr.queue1 = analyze_queue(sum(f1, f2), p.mu1);
  tr.tau1_inverse = generalized_inverse(tr.queue1.tau);
  tr.forwarded = Forward(f2, *tr.tau1_inverse);
  tr.queue2 = analyze_queue(*tr.forwarded, p.mu2);
  tr.routes = {std::vector<int>{1}, std::vector<int>{1, 2}};
  return tr;
}

NetworkTrace compose_has(const Curve& f1, const Curve& f2,
                         const GameParams& p) {
  ExpectTopology(p, Topology::kHas);
  NetworkTrace tr;
  tr.params = p;
  tr.f1 = f1;
  tr.f2 = f2;
  tr.queue1 = analyze_queue(f1, p.mu1);
  tr.tau1_inverse = generalized_inverse(tr.queue1.tau);
  tr.forwarded = Forward(f1, *tr.tau1_inverse);
  tr.queue2 = analyze_queue(sum(*tr.forwarded, f2), p.mu2);
  tr.routes = {std::vector<int>{1, 2}, std::vector<int>{2}};
  return tr;
}

NetworkTrace compose_tandem(const Curve& f1, const Curve& f2,
                            const GameParams& p) {
  ExpectTopology(p, Topology::kTandemCommon);
  NetworkTrace tr;
  tr.params = p;
  tr.f1 = f1;
  tr.f2 = f2;
  // The slower server is the only one that ever holds a queue.
  tr.queue1 = analyze_queue(sum(f1, f2), std::min(p.mu1, p.mu2));
  tr.routes = {std::vector<int>{1}, std::vector<int>{1}};
  return tr;
}

NetworkTrace compose_parallel(const Curve& f1, const Curve& f2,
                              const GameParams& p) {
  ExpectTopology(p, Topology::kParallel);
  NetworkTrace tr;
  tr.params = p;
  tr.f1 = f1;
  tr.f2 = f2;
  tr.queue1 = analyze_queue(f1, p.mu1);
  tr.queue2 = analyze_queue(f2, p.mu2);
  tr.routes = {std::vector<int>{1}, std::vector<int>{2}};
  return tr;
}

NetworkTrace compose_single(const Curve& f1, const Curve& f2,
                            const GameParams& p) {
  ExpectTopology(p, Topology::kSingleQueue);
  NetworkTrace tr;
  tr.params = p;
  tr.f1 = f1;
  tr.f2 = f2;
  tr.queue1 = analyze_queue(sum(f1, f2), p.mu1);
  tr.routes = {std::vector<int>{1}, std::vector<int>{1}};
  return tr;
}

NetworkTrace compose(const Curve& f1, const Curve& f2, const GameParams& p) {
  switch (p.topology) {
    case Topology::kSingleQueue:
      return compose_single(f1, f2, p);
    case Topology::kTandemCommon:
      return compose_tandem(f1, f2, p);
    case Topology::kParallel:
      return compose_parallel(f1, f2, p);
    case Topology::kHds:
      return compose_hds(f1, f2, p);
    case Topology::kHas:
      return compose_has(f1, f2, p);
  }
  throw std::invalid_argument("unknown topology");
}

double class_cost(const NetworkTrace& trace, int i, double t) {
  if (i != 1 && i != 2) throw std::out_of_range("class index must be 1 or 2");
  return trace.cost(i, t);
}

void write_trace_csv(const NetworkTrace& trace, int rows, std::ostream& out) {
  std::vector<double> ts = trace.kink_times();
  const double lo0 = ts.front();
  const double hi0 = ts.back();
  const double pad = 0.5 * std::max(hi0 - lo0, 1.0);
  const double lo = lo0 - pad;
  const double hi = hi0 + pad;
  for (int r = 0; r < rows; ++r) {
    ts.push_back(rows == 1 ? lo : lo + (hi - lo) * r / (rows - 1));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const bool two = trace.queue2.has_value();
  out << "t,Q1,Q2,W1,W2,tau1,tau2,C1,C2\n";
  for (double t : ts) {
    const QueueTrace& q1 = trace.queue1;
    const double row[] = {
        t,
        q1.q.eval(t),
        two ? trace.queue2->q.eval(t) : 0.0,
        q1.waiting(t),
        two ? trace.queue2->waiting(t) : 0.0,
        q1.departure(t),
        two ? trace.queue2->departure(t) : 0.0,
        trace.cost(1, t),
        trace.cost(2, t),
    };
    for (size_t c = 0; c < std::size(row); ++c) {
      if (c) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

}  // namespace fluidq
