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


#include <cmath>
#include <random>

#include "doctest.h"
#include "fluidq/curve.hpp"
#include "support/random_curves.hpp"

namespace fluidq {
namespace {

using doctest::Approx;

Curve SlopeOn(double a, double b, double rate) {
  return Curve::FromRates({{a, b, rate}});
}

TEST_CASE("eval of the zero curve") {
  CHECK(Curve().eval(5.0) == 0.0);
  CHECK(Curve().eval_left(-5.0) == 0.0);
}

TEST_CASE("eval inside a ramp") {
  // 0.6 * 31/12 by hand.
  const Curve c = SlopeOn(-31.0 / 12.0, 0.75, 0.6);
  CHECK(c.eval(0.0) == Approx(1.55).epsilon(1e-14));
  CHECK(c.eval(10.0) == Approx(0.6 * (0.75 + 31.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("one-sided limits at a jump") {
  const Curve c({{0.0, 0.0, 1.0}});
  CHECK(c.eval(0.0) == 1.0);
  CHECK(c.eval_left(0.0) == 0.0);
  CHECK(c.eval(-1e-9) == 0.0);
}

TEST_CASE("knots closer than the merge tolerance collapse") {
  const Curve c({{1.0, 0.0, 0.5}, {1.0 + 1e-13, 0.5, 2.0}});
  REQUIRE(c.knots().size() == 1);
  CHECK(c.eval_left(1.0) == 0.0);
  CHECK(c.eval(1.0) == 2.0);
}

TEST_CASE("FromRates rejects overlapping pieces") {
  CHECK_THROWS_AS(Curve::FromRates({{0.0, 2.0, 1.0}, {1.0, 3.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("sum") {
  const Curve b = SlopeOn(-1.0, 2.0, 0.8);
  SUBCASE("zero is the identity") {
    const Curve s = sum(Curve(), b);
    for (double t : {-2.0, -1.0, 0.3, 2.0, 5.0}) {
      CHECK(s.eval(t) == Approx(b.eval(t)).epsilon(1e-15));
    }
  }
  SUBCASE("slopes add on the overlap") {
    const Curve s = sum(SlopeOn(0.0, 1.0, 0.6), b);
    CHECK(s.slope_after(0.5) == Approx(1.4));
    CHECK(s.slope_after(1.5) == Approx(0.8));
  }
  SUBCASE("masses add") {
    const Curve f1 = SlopeOn(-31.0 / 12.0, 0.75, 0.6);
    const Curve f2 = SlopeOn(0.75, 2.0, 0.8);
    CHECK(total_increase(sum(f1, f2)) == Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("generalized inverse") {
  SUBCASE("identity") {
    const Curve inv = generalized_inverse(Curve::Identity());
    for (double x : {-3.0, 0.0, 2.5}) CHECK(inv.eval(x) == Approx(x));
  }
  SUBCASE("a flat stretch becomes a jump") {
    // Slope 1 up to 0, flat at 0 on [0, 2], slope 1 after.
    const Curve c({{0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}}, 1.0, 1.0);
    const Curve inv = generalized_inverse(c);
    CHECK(inv.eval_left(0.0) == Approx(0.0));
    CHECK(inv.eval(0.0) == Approx(2.0));
  }
  SUBCASE("2t on [0,1] inverts to slope 0.5 on [0,2]") {
    const Curve c({{0.0, 0.0, 0.0}, {1.0, 2.0, 2.0}}, 2.0, 2.0);
    const Curve inv = generalized_inverse(c);
    CHECK(inv.slope_after(1.0) == Approx(0.5));
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = 2.0 * k / 1000.0;
      worst = std::max(worst, std::abs(c.eval(inv.eval(x)) - x));
    }
    CHECK(worst < 1e-12);
  }
  SUBCASE("a constant curve is rejected") {
    CHECK_THROWS_AS((void)generalized_inverse(Curve::Constant(1.0)),
                    std::invalid_argument);
  }
  SUBCASE("a decreasing curve is rejected") {
    const Curve c({{0.0, 1.0, 1.0}, {1.0, 0.0, 0.0}});
    CHECK_THROWS_AS((void)generalized_inverse(c), std::invalid_argument);
  }
}

TEST_CASE("compose") {
  const Curve inner = SlopeOn(-1.0, 3.0, 0.5);
  SUBCASE("identity outside") {
    const Curve c = compose(Curve::Identity(), inner);
    for (double t : {-2.0, 0.0, 1.7, 4.0}) CHECK(c.eval(t) == Approx(inner.eval(t)));
  }
  SUBCASE("slopes multiply") {
    const Curve c = compose(Curve({{0.0, 0.0, 0.0}}, 0.8, 0.8), inner);
    CHECK(c.slope_after(1.0) == Approx(0.4));
  }
  SUBCASE("a time change keeps the mass") {
    // Class 2 of the worked HDS example through the queue-1 inverse
    // departure map, built by hand: tau1 has slope 0.3 on [-31/12, 0],
    // 0.7 on [0, 0.75] and 0.4 on [0.75, 2], identity after.
    const Curve tau({{-31.0 / 12.0, 0.0, 0.0},
                     {0.0, 0.775, 0.775},
                     {0.75, 1.0, 1.0},
                     {2.0, 2.0, 2.0}},
                    0.0, 1.0);
    const Curve f2 = SlopeOn(0.75, 2.0, 0.8);
    const Curve a2 = compose(f2, generalized_inverse(tau));
    CHECK(total_increase(a2) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("support") {
  CHECK(support(Curve()).empty());
  const Support ramp = support(SlopeOn(-1.0, 1.0, 1.0));
  REQUIRE(ramp.intervals.size() == 1);
  CHECK(ramp.lo() == -1.0);
  CHECK(ramp.hi() == 1.0);
  const Support two = support(Curve::FromRates({{-1.5, 0.0, 1.0}, {1.0, 1.5, 1.0}}));
  REQUIRE(two.intervals.size() == 2);
  CHECK(two.intervals[0].hi == 0.0);
  CHECK(two.intervals[1].lo == 1.0);
  CHECK(two.measure() == Approx(2.0));
  const Support jump = support(Curve({{2.0, 0.0, 1.0}}));
  REQUIRE(jump.intervals.size() == 1);
  CHECK(jump.lo() == jump.hi());
}

TEST_CASE("cursor agrees with binary-search evaluation") {
  std::mt19937_64 rng(11);
  testing::CurveShape shape;
  shape.knots = 30;
  shape.jump_chance = 0.2;
  for (int rep = 0; rep < 50; ++rep) {
    const Curve c = testing::RandomProfile(rng, shape);
    CurveCursor cur(c);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::vector<double> ts;
    for (const Knot& k : c.knots()) ts.push_back(k.t);
    for (int k = 0; k < 40; ++k) ts.push_back(u(rng));
    std::sort(ts.begin(), ts.end());
    // Forward sweep, then a backward jump and another sweep.
    for (int pass = 0; pass < 2; ++pass) {
      for (double t : ts) {
        CHECK(cur.eval(t) == c.eval(t));
        CHECK(cur.eval_left(t) == c.eval_left(t));
        CHECK(cur.slope_before(t) == c.slope_before(t));
      }
    }
  }
}

// Properties over seeded random curves.

TEST_CASE("property: sum is pointwise") {
  std::mt19937_64 rng(1);
  testing::CurveShape shape;
  shape.jump_chance = 0.2;
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int rep = 0; rep < 200; ++rep) {
    const Curve a = testing::RandomProfile(rng, shape);
    const Curve b = testing::RandomProfile(rng, shape);
    const Curve s = sum(a, b);
    for (int k = 0; k < 20; ++k) {
      const double t = u(rng);
      CHECK(std::abs(s.eval(t) - a.eval(t) - b.eval(t)) <= 1e-12);
      CHECK(std::abs(s.eval_left(t) - a.eval_left(t) - b.eval_left(t)) <= 1e-12);
    }
  }
}

TEST_CASE("property: inverse is an involution on strictly increasing curves") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const Curve c = testing::RandomStrictlyIncreasing(rng);
    const Curve back = generalized_inverse(generalized_inverse(c));
    for (const Knot& k : c.knots()) {
      CHECK(std::abs(back.eval(k.t) - k.right) <= 1e-10);
    }
  }
}

TEST_CASE("property: identity is neutral for compose") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int rep = 0; rep < 200; ++rep) {
    const Curve c = testing::RandomProfile(rng);
    const Curve left = compose(Curve::Identity(), c);
    const Curve right = compose(c, Curve::Identity());
    for (int k = 0; k < 20; ++k) {
      const double t = u(rng);
      CHECK(std::abs(left.eval(t) - c.eval(t)) <= 1e-12);
      CHECK(std::abs(right.eval(t) - c.eval(t)) <= 1e-12);
    }
  }
}

TEST_CASE("property: the support carries the whole increase") {
  std::mt19937_64 rng(4);
  testing::CurveShape shape;
  shape.jump_chance = 0.2;
  shape.flat_chance = 0.4;
  for (int rep = 0; rep < 200; ++rep) {
    const Curve c = testing::RandomProfile(rng, shape);
    double carried = 0.0;
    for (const Interval& iv : support(c).intervals) {
      carried += c.eval(iv.hi) - c.eval_left(iv.lo);
    }
    CHECK(std::abs(carried - total_increase(c)) <= 1e-12);
  }
}

}  // namespace
}  // namespace fluidq
