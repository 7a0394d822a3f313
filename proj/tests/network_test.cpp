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


#include <algorithm>
#include <clocale>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fluidq/eap_solver.hpp"
#include "fluidq/network.hpp"
#include "support/random_curves.hpp"

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

// The worked HDS example and its equilibrium, written out by hand.
const GameParams kHds = Params(Topology::kHds, 2, 1, 2, 1, 0.3, 0.8);
const double kT1a = -31.0 / 12.0;
Curve HdsF1() { return Curve::FromRates({{kT1a, 0.75, 0.6}}); }
Curve HdsF2() { return Curve::FromRates({{0.75, 2.0, 0.8}}); }

// The worked HAS example (two-interval class 2).
const GameParams kHas = Params(Topology::kHas, 1, 2, 1, 2, 0.2, 0.5);
Curve HasF1() { return Curve::FromRates({{-1.5, 1.0, 0.4}}); }
Curve HasF2() { return Curve::FromRates({{-1.5, 0.0, 1.0}, {1.0, 1.5, 1.0}}); }

TEST_CASE("topology names round-trip") {
  for (Topology t : {Topology::kSingleQueue, Topology::kTandemCommon,
                     Topology::kParallel, Topology::kHds, Topology::kHas}) {
    CHECK(parse_topology(to_string(t)) == t);
  }
  CHECK_THROWS_AS((void)parse_topology("Ring"), std::invalid_argument);
}

TEST_CASE("parameter validation names the field") {
  GameParams p = kHds;
  p.gamma2 = 1.0;
  CHECK_THROWS_WITH_AS(p.validate(), "gamma2 must lie in (0,1)",
                       std::invalid_argument);
  p = kHds;
  p.mu1 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = kHds;
  p.lambda1 = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK(GameParams::GammaFromCosts(1.0, 3.0) == 0.25);
}

TEST_CASE("compose rejects the wrong topology") {
  CHECK_THROWS_AS((void)compose_hds(HdsF1(), HdsF2(), kHas), std::invalid_argument);
  CHECK_THROWS_AS((void)compose_has(HdsF1(), HdsF2(), kHds), std::invalid_argument);
}

TEST_CASE("HDS without class 2 is a single queue at mu1") {
  const NetworkTrace tr = compose(HdsF1(), Curve(), kHds);
  const QueueTrace single = analyze_queue(HdsF1(), kHds.mu1);
  for (double t : {-2.0, -0.5, 0.0, 0.5, 1.0, 3.0}) {
    CHECK(tr.class_waiting(1, t) == Approx(single.waiting(t)));
  }
}

TEST_CASE("HDS equilibrium costs are flat on each support") {
  const NetworkTrace tr = compose(HdsF1(), HdsF2(), kHds);
  // gamma1 * (-T1a) for class 1, (1 - gamma2) * T2f for class 2.
  for (double t = kT1a; t <= 0.75; t += 0.01) {
    CHECK(tr.cost(1, t) == Approx(0.775).epsilon(1e-9));
  }
  CHECK(tr.cost(2, 0.75) == Approx(0.4).epsilon(1e-9));
  CHECK(tr.cost(2, 2.0) == Approx(0.4).epsilon(1e-9));
  CHECK(total_increase(*tr.forwarded) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("HAS without class 1 is a single queue at mu2") {
  const NetworkTrace tr = compose(Curve(), HasF2(), kHas);
  const QueueTrace single = analyze_queue(HasF2(), kHas.mu2);
  for (double t : {-1.0, 0.0, 0.5, 1.2, 2.0}) {
    CHECK(tr.class_waiting(2, t) == Approx(single.waiting(t)));
  }
}

TEST_CASE("HAS below the queue-1 rate forwards class 1 untouched") {
  const Curve f1 = Curve::FromRates({{0.0, 2.0, 0.9}});
  const NetworkTrace tr = compose(f1, HasF2(), kHas);
  for (const Knot& k : tr.queue1.q.knots()) CHECK(k.right == 0.0);
  for (double t : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(tr.forwarded->eval(t) == Approx(f1.eval(t)));
  }
}

TEST_CASE("HAS two-interval equilibrium: class 2 pays the same at both ends") {
  const NetworkTrace tr = compose(HasF1(), HasF2(), kHas);
  CHECK(tr.cost(2, 0.0) == Approx(tr.cost(2, 1.0)).epsilon(1e-9));
  CHECK(tr.cost(2, -1.5) == Approx(tr.cost(2, 1.5)).epsilon(1e-9));
  // Queue 2 stays busy through the gap in class-2 arrivals.
  for (double t = 0.05; t < 1.5; t += 0.05) CHECK(tr.queue2->q.eval(t) > 0.0);
}

TEST_CASE("class cost in an empty network") {
  for (Topology topo : {Topology::kHds, Topology::kHas, Topology::kParallel}) {
    GameParams p = kHds;
    p.topology = topo;
    const NetworkTrace tr = compose(Curve(), Curve(), p);
    CHECK(class_cost(tr, 1, 2.0) == Approx(0.7 * 2.0));
    CHECK(class_cost(tr, 2, 2.0) == Approx(0.2 * 2.0));
    CHECK(class_cost(tr, 1, -3.0) == Approx(0.3 * 3.0));
    CHECK(class_cost(tr, 2, -3.0) == Approx(0.8 * 3.0));
  }
  const NetworkTrace tr = compose(Curve(), Curve(), kHds);
  CHECK_THROWS_AS((void)class_cost(tr, 3, 0.0), std::out_of_range);
}

TEST_CASE("tandem equals a single queue at the slower rate") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const Curve f1 = testing::RandomProfile(rng);
    const Curve f2 = testing::RandomProfile(rng);
    const GameParams tandem = Params(Topology::kTandemCommon, 1.3, 0.7, 1, 1, 0.4, 0.6);
    GameParams single = tandem;
    single.topology = Topology::kSingleQueue;
    single.mu1 = 0.7;
    const NetworkTrace a = compose(f1, f2, tandem);
    const NetworkTrace b = compose(f1, f2, single);
    for (double t = -4.0; t <= 8.0; t += 0.1) {
      CHECK(std::abs(a.cost(1, t) - b.cost(1, t)) <= 1e-12);
      CHECK(std::abs(a.cost(2, t) - b.cost(2, t)) <= 1e-12);
    }
  }
}

TEST_CASE("parallel queues are independent") {
  const GameParams p = Params(Topology::kParallel, 1.0, 2.0, 1, 1, 0.4, 0.6);
  const Curve f1 = Curve::FromRates({{-1.0, 1.0, 1.5}});
  const NetworkTrace a = compose(f1, Curve::FromRates({{0.0, 1.0, 3.0}}), p);
  const NetworkTrace b = compose(f1, Curve::FromRates({{-2.0, 0.0, 0.5}}), p);
  const QueueTrace alone = analyze_queue(f1, 1.0);
  for (double t = -2.0; t <= 4.0; t += 0.25) {
    CHECK(a.class_waiting(1, t) == b.class_waiting(1, t));
    CHECK(a.class_waiting(1, t) == Approx(alone.waiting(t)));
  }
}

TEST_CASE("batched costs match pointwise costs") {
  std::mt19937_64 rng(32);
  testing::CurveShape shape;
  shape.jump_chance = 0.2;
  for (Topology topo : {Topology::kHds, Topology::kHas, Topology::kParallel,
                        Topology::kSingleQueue}) {
    GameParams p = Params(topo, 1.7, 0.9, 1, 1, 0.3, 0.6);
    for (int rep = 0; rep < 20; ++rep) {
      const NetworkTrace tr = compose(testing::RandomProfile(rng, shape),
                                      testing::RandomProfile(rng, shape), p);
      std::vector<double> ts = tr.kink_times();
      for (int k = 0; k <= 200; ++k) ts.push_back(-5.0 + 0.06 * k);
      std::sort(ts.begin(), ts.end());
      for (int i = 1; i <= 2; ++i) {
        const std::vector<double> c = tr.costs(i, ts);
        for (size_t k = 0; k < ts.size(); ++k) CHECK(c[k] == tr.cost(i, ts[k]));
      }
    }
  }
}

// Properties over seeded random profiles.

TEST_CASE("property: mass is conserved into queue 2") {
  std::mt19937_64 rng(33);
  testing::CurveShape shape;
  shape.jump_chance = 0.15;
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const Curve f1 = testing::RandomProfile(rng, shape);
    const Curve f2 = testing::RandomProfile(rng, shape);
    const double m1 = total_increase(f1), m2 = total_increase(f2);
    GameParams p = Params(Topology::kHds, u(rng), u(rng), m1, m2, 0.3, 0.6);
    const NetworkTrace hds = compose(f1, f2, p);
    CHECK(std::abs(total_increase(hds.queue2->arrivals) - m2) <= 1e-9);
    p.topology = Topology::kHas;
    const NetworkTrace has = compose(f1, f2, p);
    CHECK(std::abs(total_increase(has.queue2->arrivals) - m1 - m2) <= 1e-9);
  }
}

TEST_CASE("property: class departures are monotone") {
  std::mt19937_64 rng(34);
  testing::CurveShape shape;
  shape.jump_chance = 0.15;
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    for (Topology topo : {Topology::kHds, Topology::kHas}) {
      const GameParams p = Params(topo, u(rng), u(rng), 1, 1, 0.3, 0.6);
      const NetworkTrace tr = compose(testing::RandomProfile(rng, shape),
                                      testing::RandomProfile(rng, shape), p);
      for (int i = 1; i <= 2; ++i) {
        double prev = -INFINITY;
        for (double t = -4.0; t <= 10.0; t += 0.01) {
          const double d = tr.class_departure(i, t);
          CHECK(d >= prev - 1e-12);
          prev = d;
        }
      }
    }
  }
}

TEST_CASE("property: class costs are bounded below") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const GameParams p = Params(rep % 2 ? Topology::kHds : Topology::kHas, u(rng),
                                u(rng), 1, 1, 0.3, 0.6);
    const NetworkTrace tr = compose(testing::RandomProfile(rng),
                                    testing::RandomProfile(rng), p);
    for (double t = -4.0; t <= 8.0; t += 0.05) {
      CHECK(tr.cost(1, t) >= 0.7 * std::max(t, 0.0) - 1e-12);
      CHECK(tr.cost(2, t) >= 0.4 * std::max(t, 0.0) - 1e-12);
    }
  }
}

TEST_CASE("property: HDS with a fast second server never queues there") {
  std::mt19937_64 rng(36);
  testing::CurveShape shape;
  shape.jump_chance = 0.15;
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double mu1 = u(rng);
    const GameParams p = Params(Topology::kHds, mu1, mu1 + u(rng), 1, 1, 0.3, 0.6);
    const NetworkTrace tr = compose(testing::RandomProfile(rng, shape),
                                    testing::RandomProfile(rng, shape), p);
    std::vector<double> ts = tr.kink_times();
    for (int k = 0; k < 1000; ++k) ts.push_back(-4.0 + 0.012 * k);
    for (double t : ts) CHECK(tr.queue2->q.eval(t) <= 1e-12);
  }
}

TEST_CASE("trace CSV") {
  const NetworkTrace tr = compose(HdsF1(), HdsF2(), kHds);
  std::ostringstream os;
  write_trace_csv(tr, 50, os);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,Q1,Q2,W1,W2,tau1,tau2,C1,C2");
  double q_peak = -1.0, t_peak = 0.0;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
    const double t = std::stod(line.substr(0, line.find(',')));
    const double q1 = tr.queue1.q.eval(t);
    if (q1 > q_peak) q_peak = q1, t_peak = t;
  }
  CHECK(rows >= 50);
  CHECK(t_peak == Approx(0.0));
  CHECK(q_peak == Approx(1.55));
}

TEST_CASE("trace CSV ignores the global locale") {
  const char* prev = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = prev ? prev : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) {
    MESSAGE("de_DE locale not installed; checking the C locale only");
  }
  std::ostringstream os;
  write_trace_csv(compose(HdsF1(), HdsF2(), kHds), 5, os);
  std::setlocale(LC_NUMERIC, saved.c_str());
  CHECK(os.str().find("0.775") != std::string::npos);
}

TEST_CASE("empty profiles give an all-zero trace after the opening") {
  std::ostringstream os;
  write_trace_csv(compose(Curve(), Curve(), kHds), 20, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
    if (v[0] >= 0.0) {
      for (int c : {1, 2, 3, 4}) CHECK(v[c] == 0.0);
    }
  }
}

}  // namespace
}  // namespace fluidq
