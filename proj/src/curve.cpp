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

#include "fluidq/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fluidq {
namespace {

bool AllFinite(const Knot& k) {
  return std::isfinite(k.t) && std::isfinite(k.left) && std::isfinite(k.right);
}

// Index of the last knot with t_k <= t, or -1.
int LastAtOrBefore(const std::vector<Knot>& knots, double t) {
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double x, const Knot& k) { return x < k.t; });
  return static_cast<int>(it - knots.begin()) - 1;
}

// Index of the first knot with t_k >= t, or knots.size().
int FirstAtOrAfter(const std::vector<Knot>& knots, double t) {
  auto it = std::lower_bound(knots.begin(), knots.end(), t,
                             [](const Knot& k, double x) { return k.t < x; });
  return static_cast<int>(it - knots.begin());
}

// Value on the open piece that contains t, given k = LastAtOrBefore(t) and
// t not equal to a knot time.
double Interior(const std::vector<Knot>& knots, double ls, double rs, int k,
                double t) {
  if (k < 0) return knots.front().left + ls * (t - knots.front().t);
  const int n = static_cast<int>(knots.size());
  if (k == n - 1) return knots.back().right + rs * (t - knots.back().t);
  const Knot& a = knots[k];
  const Knot& b = knots[k + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return a.right + w * (b.left - a.right);
}

}  // namespace

double Support::measure() const {
  double m = 0.0;
  for (const Interval& iv : intervals) m += iv.hi - iv.lo;
  return m;
}

bool Support::contains(double t, double tol) const {
  for (const Interval& iv : intervals) {
    if (t >= iv.lo - tol && t <= iv.hi + tol) return true;
  }
  return false;
}

double Support::lo() const {
  if (intervals.empty()) throw std::logic_error("empty support has no lo");
  return intervals.front().lo;
}

double Support::hi() const {
  if (intervals.empty()) throw std::logic_error("empty support has no hi");
  return intervals.back().hi;
}

Curve::Curve() : knots_{{0.0, 0.0, 0.0}} {}

Curve::Curve(std::vector<Knot> knots, double left_slope, double right_slope)
    : left_slope_(left_slope), right_slope_(right_slope) {
  if (!std::isfinite(left_slope) || !std::isfinite(right_slope)) {
    throw std::invalid_argument("curve tail slope is not finite");
  }
  if (knots.empty()) {
    if (left_slope != right_slope) {
      throw std::invalid_argument("curve without knots needs equal slopes");
    }
    knots.push_back({0.0, 0.0, 0.0});
  }
  for (const Knot& k : knots) {
    if (!AllFinite(k)) throw std::invalid_argument("curve knot is not finite");
  }
  auto by_time = [](const Knot& a, const Knot& b) { return a.t < b.t; };
  if (!std::is_sorted(knots.begin(), knots.end(), by_time)) {
    std::stable_sort(knots.begin(), knots.end(), by_time);
  }
  knots_.reserve(knots.size());
  knots_.push_back(knots.front());
  for (size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].t - knots_.back().t <= kMergeTolerance) {
      knots_.back().right = knots[i].right;
    } else {
      knots_.push_back(knots[i]);
    }
  }
}

Curve Curve::Constant(double v) { return Curve({{0.0, v, v}}); }

Curve Curve::Identity() { return Curve({{0.0, 0.0, 0.0}}, 1.0, 1.0); }

Curve Curve::Ramp() { return Curve({{0.0, 0.0, 0.0}}, 0.0, 1.0); }

Curve Curve::FromPoints(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Knot> knots;
  knots.reserve(pts.size());
  for (const auto& [t, v] : pts) knots.push_back({t, v, v});
  return Curve(std::move(knots));
}

Curve Curve::FromRates(std::vector<RatePiece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const RatePiece& a, const RatePiece& b) {
              return a.start < b.start;
            });
  std::vector<std::pair<double, double>> pts;
  double v = 0.0;
  double prev_end = -INFINITY;
  for (const RatePiece& p : pieces) {
    if (p.end < p.start) throw std::invalid_argument("rate piece reversed");
    if (p.start < prev_end - kMergeTolerance) {
      throw std::invalid_argument("rate pieces overlap");
    }
    if (p.end - p.start <= kMergeTolerance) continue;
    pts.emplace_back(p.start, v);
    v += p.rate * (p.end - p.start);
    pts.emplace_back(p.end, v);
    prev_end = p.end;
  }
  if (pts.empty()) return Curve();
  return FromPoints(pts);
}

double Curve::eval(double t) const {
  const int k = LastAtOrBefore(knots_, t);
  if (k >= 0 && knots_[k].t == t) return knots_[k].right;
  return Interior(knots_, left_slope_, right_slope_, k, t);
}

double Curve::eval_left(double t) const {
  const int k = FirstAtOrAfter(knots_, t);
  if (k < static_cast<int>(knots_.size()) && knots_[k].t == t) {
    return knots_[k].left;
  }
  return Interior(knots_, left_slope_, right_slope_, k - 1, t);
}

double Curve::slope_after(double t) const {
  const int k = LastAtOrBefore(knots_, t);
  const int n = static_cast<int>(knots_.size());
  if (k < 0) return left_slope_;
  if (k == n - 1) return right_slope_;
  const Knot& a = knots_[k];
  const Knot& b = knots_[k + 1];
  return (b.left - a.right) / (b.t - a.t);
}

double Curve::slope_before(double t) const {
  const int k = FirstAtOrAfter(knots_, t);
  const int n = static_cast<int>(knots_.size());
  if (k == 0) return left_slope_;
  if (k == n) return right_slope_;
  const Knot& a = knots_[k - 1];
  const Knot& b = knots_[k];
  return (b.left - a.right) / (b.t - a.t);
}

int CurveCursor::Locate(double t) {
  const std::vector<Knot>& k = c_->knots();
  const int n = static_cast<int>(k.size());
  if (k_ >= 0 && k[k_].t > t) {
    k_ = LastAtOrBefore(k, t);
    return k_;
  }
  // Short forward walks are the common case; gallop otherwise.
  for (int step = 0; step < 8; ++step) {
    if (k_ + 1 >= n || k[k_ + 1].t > t) return k_;
    ++k_;
  }
  auto it = std::upper_bound(k.begin() + k_ + 1, k.end(), t,
                             [](double x, const Knot& kn) { return x < kn.t; });
  k_ = static_cast<int>(it - k.begin()) - 1;
  return k_;
}

double CurveCursor::eval(double t) {
  const std::vector<Knot>& k = c_->knots();
  const int i = Locate(t);
  if (i >= 0 && k[i].t == t) return k[i].right;
  return Interior(k, c_->left_slope(), c_->right_slope(), i, t);
}

double CurveCursor::eval_left(double t) {
  const std::vector<Knot>& k = c_->knots();
  const int i = Locate(t);
  if (i >= 0 && k[i].t == t) return k[i].left;
  return Interior(k, c_->left_slope(), c_->right_slope(), i, t);
}

double CurveCursor::slope_before(double t) {
  const std::vector<Knot>& k = c_->knots();
  const int i = Locate(t);
  const int f = (i >= 0 && k[i].t == t) ? i : i + 1;
  const int n = static_cast<int>(k.size());
  if (f == 0) return c_->left_slope();
  if (f == n) return c_->right_slope();
  return (k[f].left - k[f - 1].right) / (k[f].t - k[f - 1].t);
}

bool Curve::is_continuous(double tol) const {
  return std::all_of(knots_.begin(), knots_.end(), [tol](const Knot& k) {
    return std::abs(k.right - k.left) <= tol;
  });
}

bool Curve::is_non_decreasing(double tol) const {
  if (left_slope_ < 0.0 || right_slope_ < 0.0) return false;
  for (size_t i = 0; i < knots_.size(); ++i) {
    if (knots_[i].right < knots_[i].left - tol) return false;
    if (i + 1 < knots_.size() && knots_[i + 1].left < knots_[i].right - tol) {
      return false;
    }
  }
  return true;
}

Curve sum(const Curve& a, const Curve& b) {
  std::vector<double> times;
  times.reserve(a.knots().size() + b.knots().size());
  const std::vector<Knot>& ak = a.knots();
  const std::vector<Knot>& bk = b.knots();
  size_t i = 0, j = 0;
  while (i < ak.size() || j < bk.size()) {
    if (j == bk.size() || (i < ak.size() && ak[i].t < bk[j].t)) {
      times.push_back(ak[i++].t);
    } else {
      times.push_back(bk[j++].t);
    }
  }
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<Knot> knots;
  knots.reserve(times.size());
  CurveCursor ca(a), cb(b);
  for (double t : times) {
    knots.push_back(
        {t, ca.eval_left(t) + cb.eval_left(t), ca.eval(t) + cb.eval(t)});
  }
  return Curve(std::move(knots), a.left_slope() + b.left_slope(),
               a.right_slope() + b.right_slope());
}

Curve scale(const Curve& c, double k) {
  std::vector<Knot> knots = c.knots();
  for (Knot& x : knots) {
    x.left *= k;
    x.right *= k;
  }
  return Curve(std::move(knots), c.left_slope() * k, c.right_slope() * k);
}

Curve shift(const Curve& c, double dt) {
  std::vector<Knot> knots = c.knots();
  for (Knot& x : knots) x.t += dt;
  return Curve(std::move(knots), c.left_slope(), c.right_slope());
}

Curve generalized_inverse(const Curve& c) {
  if (!c.is_non_decreasing()) {
    throw std::invalid_argument("generalized_inverse needs a non-decreasing curve");
  }
  if (c.left_slope() == 0.0 && c.right_slope() == 0.0 &&
      c.final_value() - c.initial_value() <= kMergeTolerance) {
    throw std::invalid_argument("generalized_inverse of a constant curve");
  }
  // Walk the graph of c as a monotone path (jumps become vertical segments)
  // and transpose it. Equal values merge into one knot whose left is the
  // first time reaching the value and whose right is the last.
  std::vector<Knot> out;
  out.reserve(2 * c.knots().size());
  double running = -INFINITY;
  for (const Knot& k : c.knots()) {
    running = std::max(running, k.left);
    out.push_back({running, k.t, k.t});
    running = std::max(running, k.right);
    out.push_back({running, k.t, k.t});
  }
  const double ls = c.left_slope() > 0.0 ? 1.0 / c.left_slope() : 0.0;
  const double rs = c.right_slope() > 0.0 ? 1.0 / c.right_slope() : 0.0;
  return Curve(std::move(out), ls, rs);
}

Curve compose(const Curve& outer, const Curve& inner) {
  const std::vector<Knot>& ik = inner.knots();
  const std::vector<Knot>& ok = outer.knots();
  std::vector<double> times;
  times.reserve(ik.size() + ok.size());

  // Preimages of outer's breakpoints on each strictly increasing piece.
  auto add_crossings = [&](double ta, double va, double tb, double vb,
                           double slope) {
    if (!(slope > 0.0)) return;
    auto lo = std::upper_bound(ok.begin(), ok.end(), va,
                               [](double x, const Knot& k) { return x < k.t; });
    for (auto it = lo; it != ok.end() && it->t < vb; ++it) {
      const double s = std::isfinite(ta) ? ta + (it->t - va) / slope
                                         : tb - (vb - it->t) / slope;
      times.push_back(s);
    }
  };
  add_crossings(-INFINITY, -INFINITY, ik.front().t, ik.front().left,
                inner.left_slope());
  // Knot times interleaved with crossings keep `times` sorted whenever inner
  // is non-decreasing.
  for (size_t i = 0; i + 1 < ik.size(); ++i) {
    times.push_back(ik[i].t);
    const double dt = ik[i + 1].t - ik[i].t;
    add_crossings(ik[i].t, ik[i].right, ik[i + 1].t, ik[i + 1].left,
                  (ik[i + 1].left - ik[i].right) / dt);
  }
  times.push_back(ik.back().t);
  add_crossings(ik.back().t, ik.back().right, INFINITY, INFINITY,
                inner.right_slope());

  if (!std::is_sorted(times.begin(), times.end())) {
    std::sort(times.begin(), times.end());
  }
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<Knot> knots;
  knots.reserve(times.size());
  CurveCursor ci(inner), co(outer);
  for (double t : times) {
    const double x = ci.eval_left(t);
    const double left = ci.slope_before(t) > 0.0 ? co.eval_left(x) : co.eval(x);
    knots.push_back({t, left, co.eval(ci.eval(t))});
  }
  const double t0 = times.front();
  const double t1 = times.back();
  const double sl = inner.slope_before(t0);
  const double sr = inner.slope_after(t1);
  const double ls = sl > 0.0 ? sl * outer.slope_before(inner.eval_left(t0)) : 0.0;
  const double rs = sr > 0.0 ? sr * outer.slope_after(inner.eval(t1)) : 0.0;
  return Curve(std::move(knots), ls, rs);
}

Support support(const Curve& c) {
  if (!c.has_finite_tails()) {
    throw std::invalid_argument("support needs flat tails");
  }
  const std::vector<Knot>& k = c.knots();
  Support s;
  auto add = [&s](double lo, double hi) {
    if (!s.intervals.empty() && lo - s.intervals.back().hi <= kMergeTolerance) {
      s.intervals.back().hi = std::max(s.intervals.back().hi, hi);
    } else {
      s.intervals.push_back({lo, hi});
    }
  };
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i].right - k[i].left > kMergeTolerance) add(k[i].t, k[i].t);
    if (i + 1 < k.size() && k[i + 1].left - k[i].right > kMergeTolerance) {
      add(k[i].t, k[i + 1].t);
    }
  }
  return s;
}

double total_increase(const Curve& c) {
  if (!c.has_finite_tails()) {
    throw std::invalid_argument("total_increase needs flat tails");
  }
  return c.final_value() - c.initial_value();
}

}  // namespace fluidq
