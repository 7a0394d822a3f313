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

#ifndef FLUIDQ_CURVE_HPP_
#define FLUIDQ_CURVE_HPP_

#include <vector>

namespace fluidq {

// Breakpoints closer than this are treated as one.
inline constexpr double kMergeTolerance = 1e-12;

// A breakpoint with both one-sided values. left != right marks a jump.
struct Knot {
  double t;
  double left;
  double right;

  bool operator==(const Knot&) const = default;
};

struct Interval {
  double lo;
  double hi;
};

// Ordered, disjoint closed intervals.
struct Support {
  std::vector<Interval> intervals;

  [[nodiscard]] bool empty() const { return intervals.empty(); }
  [[nodiscard]] double measure() const;
  [[nodiscard]] bool contains(double t, double tol = kMergeTolerance) const;
  [[nodiscard]] double lo() const;
  [[nodiscard]] double hi() const;
};

// Interval pieces of a piecewise-constant rate, used to build cumulative
// profiles. Pieces may leave gaps; they must not overlap.
struct RatePiece {
  double start;
  double end;
  double rate;
};

// Right-continuous piecewise-linear function of time. Linear between knots,
// with a constant slope on each unbounded tail. Immutable.
class Curve {
 public:
  // The zero curve.
  Curve();
  Curve(std::vector<Knot> knots, double left_slope = 0.0,
        double right_slope = 0.0);

  static Curve Constant(double v);
  static Curve Identity();
  // max(t, 0).
  static Curve Ramp();
  // Continuous curve through the points, flat on both tails.
  static Curve FromPoints(const std::vector<std::pair<double, double>>& pts);
  // Cumulative integral of the rates, zero before the first piece.
  static Curve FromRates(std::vector<RatePiece> pieces);

  // Right limit c(t+), which is also c(t).
  [[nodiscard]] double eval(double t) const;
  // Left limit c(t-).
  [[nodiscard]] double eval_left(double t) const;
  // Slope of the linear piece just right (after) or left (before) of t.
  [[nodiscard]] double slope_after(double t) const;
  [[nodiscard]] double slope_before(double t) const;

  [[nodiscard]] const std::vector<Knot>& knots() const { return knots_; }
  [[nodiscard]] double left_slope() const { return left_slope_; }
  [[nodiscard]] double right_slope() const { return right_slope_; }
  [[nodiscard]] double first_time() const { return knots_.front().t; }
  [[nodiscard]] double last_time() const { return knots_.back().t; }
  // Value on the flat left tail and at the end of a flat right tail.
  [[nodiscard]] double initial_value() const { return knots_.front().left; }
  [[nodiscard]] double final_value() const { return knots_.back().right; }

  [[nodiscard]] bool has_finite_tails() const {
    return left_slope_ == 0.0 && right_slope_ == 0.0;
  }
  [[nodiscard]] bool is_continuous(double tol = kMergeTolerance) const;
  [[nodiscard]] bool is_non_decreasing(double tol = 1e-9) const;

 private:
  std::vector<Knot> knots_;
  double left_slope_ = 0.0;
  double right_slope_ = 0.0;
};

// Evaluates one curve at a mostly non-decreasing sequence of times in
// amortized constant time. Backward queries fall back to binary search.
// Holds a reference; the curve must outlive the cursor.
class CurveCursor {
 public:
  explicit CurveCursor(const Curve& c) : c_(&c) {}

  [[nodiscard]] double eval(double t);
  [[nodiscard]] double eval_left(double t);
  [[nodiscard]] double slope_before(double t);

 private:
  // Last knot index with t_k <= t, or -1.
  int Locate(double t);

  const Curve* c_;
  int k_ = -1;
};

[[nodiscard]] Curve sum(const Curve& a, const Curve& b);
[[nodiscard]] Curve scale(const Curve& c, double k);
[[nodiscard]] Curve shift(const Curve& c, double dt);

// sup{s : c(s) <= x}. Where the sup runs off a flat tail it is clamped to the
// nearest breakpoint time. Throws std::invalid_argument if c is decreasing
// somewhere or constant everywhere.
[[nodiscard]] Curve generalized_inverse(const Curve& c);

// outer(inner(t)) for non-decreasing inner.
[[nodiscard]] Curve compose(const Curve& outer, const Curve& inner);

// Closed intervals carrying all increase of c. Throws std::invalid_argument
// if a tail slope is nonzero.
[[nodiscard]] Support support(const Curve& c);

// final_value - initial_value of a curve with flat tails.
[[nodiscard]] double total_increase(const Curve& c);

}  // namespace fluidq

#endif  // FLUIDQ_CURVE_HPP_
