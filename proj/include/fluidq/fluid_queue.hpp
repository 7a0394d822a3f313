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

#ifndef FLUIDQ_FLUID_QUEUE_HPP_
#define FLUIDQ_FLUID_QUEUE_HPP_

#include "fluidq/curve.hpp"

namespace fluidq {

// Queue lengths below this are treated as an empty queue.
inline constexpr double kEmptyQueue = 1e-12;

// A single FIFO fluid queue that opens at time 0 and serves at rate mu.
// Mass arriving before 0 waits for the opening.
struct QueueTrace {
  Curve arrivals;
  double mu = 1.0;
  Curve q;
  // Right-continuous departure map Q(t)/mu + max(t, 0).
  Curve tau;
  Support engaged;

  // Expected wait of mass arriving at t. At a jump the arriving mass is put
  // in uniformly random order, so the two one-sided queue lengths average.
  [[nodiscard]] double waiting(double t) const;
  [[nodiscard]] double departure(double t) const { return waiting(t) + t; }
};

// Q(t) = A(t) - mu max(t,0) + sup_{s in [0,t]} max(mu s - A(s), 0).
[[nodiscard]] Curve queue_length(const Curve& a, double mu);
[[nodiscard]] double waiting_time(const Curve& a, double mu, double t);
[[nodiscard]] Curve departure_map(const Curve& a, double mu);
// Closure of {s : Q(s) > 0}.
[[nodiscard]] Support engaged_set(const Curve& a, double mu);

[[nodiscard]] QueueTrace analyze_queue(const Curve& a, double mu);

}  // namespace fluidq

#endif  // FLUIDQ_FLUID_QUEUE_HPP_
