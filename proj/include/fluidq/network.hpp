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

#ifndef FLUIDQ_NETWORK_HPP_
#define FLUIDQ_NETWORK_HPP_

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fluidq/curve.hpp"
#include "fluidq/fluid_queue.hpp"

namespace fluidq {

// kSingleQueue uses mu1 only. kTandemCommon is two queues in series shared
// by both classes. kParallel gives each class its own queue. In kHds both
// classes enter queue 1 and class 2 continues to queue 2. In kHas class i
// enters queue i and everything leaves through queue 2.
enum class Topology { kSingleQueue, kTandemCommon, kParallel, kHds, kHas };

[[nodiscard]] std::string to_string(Topology t);
// Throws std::invalid_argument on unknown names.
[[nodiscard]] Topology parse_topology(const std::string& name);

struct GameParams {
  Topology topology = Topology::kSingleQueue;
  double mu1 = 1.0;
  double mu2 = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma1 = 0.5;
  double gamma2 = 0.5;

  // Normalized weight of waiting against late departure.
  static double GammaFromCosts(double alpha, double beta);

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  [[nodiscard]] double gamma(int i) const { return i == 1 ? gamma1 : gamma2; }
  [[nodiscard]] double lambda(int i) const {
    return i == 1 ? lambda1 : lambda2;
  }
};

struct NetworkTrace {
  GameParams params;
  Curve f1;
  Curve f2;
  QueueTrace queue1;
  std::optional<QueueTrace> queue2;
  // The class stream that queue 1 forwards to queue 2 (F_i composed with the
  // inverse departure map of queue 1), when such a stream exists.
  std::optional<Curve> forwarded;
  std::optional<Curve> tau1_inverse;
  // Queues (1-based) visited by each class, in order.
  std::array<std::vector<int>, 2> routes;

  [[nodiscard]] const QueueTrace& queue(int j) const;
  [[nodiscard]] bool has_queue(int j) const {
    return j == 1 || queue2.has_value();
  }
  [[nodiscard]] const Curve& profile(int i) const { return i == 1 ? f1 : f2; }

  [[nodiscard]] double class_waiting(int i, double t) const;
  [[nodiscard]] double class_departure(int i, double t) const;
  [[nodiscard]] double cost(int i, double t) const;
  // cost(i, t) at every t. Fastest when ts is sorted.
  [[nodiscard]] std::vector<double> costs(int i,
                                          const std::vector<double>& ts) const;

  // Every time where a class cost can have a kink: breakpoints of the
  // profiles and queues plus preimages of queue-2 breakpoints under the
  // queue-1 departure map. Sorted, unique.
  [[nodiscard]] std::vector<double> kink_times() const;
};

[[nodiscard]] NetworkTrace compose_hds(const Curve& f1, const Curve& f2,
                                       const GameParams& p);
[[nodiscard]] NetworkTrace compose_has(const Curve& f1, const Curve& f2,
                                       const GameParams& p);
[[nodiscard]] NetworkTrace compose_tandem(const Curve& f1, const Curve& f2,
                                          const GameParams& p);
[[nodiscard]] NetworkTrace compose_parallel(const Curve& f1, const Curve& f2,
                                            const GameParams& p);
[[nodiscard]] NetworkTrace compose_single(const Curve& f1, const Curve& f2,
                                          const GameParams& p);
// Dispatches on p.topology.
[[nodiscard]] NetworkTrace compose(const Curve& f1, const Curve& f2,
                                   const GameParams& p);

[[nodiscard]] double class_cost(const NetworkTrace& trace, int i, double t);

// Header: t,Q1,Q2,W1,W2,tau1,tau2,C1,C2. tau_j is the departure map of
// queue j; Q2, W2, tau2 are 0 when the topology has one queue.
void write_trace_csv(const NetworkTrace& trace, int rows, std::ostream& out);

}  // namespace fluidq

#endif  // FLUIDQ_NETWORK_HPP_
