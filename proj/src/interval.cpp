#include "gm/interval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "gm/errors.hpp"

namespace gm {

Interval::Interval(double l, double h, bool cl, bool ch)
    : lo(l), hi(h), closed_lo(cl), closed_hi(ch) {
  if (std::isnan(l) || std::isnan(h)) throw std::invalid_argument("interval endpoint is NaN");
  if (l > h) throw std::invalid_argument("interval with lo > hi");
  if (l == kInf) throw std::invalid_argument("interval lo must be finite");
  if (h == -kInf) throw std::invalid_argument("interval hi is -inf");
}

bool Interval::contains(double t) const {
  if (empty()) return false;
  if (t == lo && t == hi) return closed_lo && closed_hi;
  if (t == lo) return closed_lo;
  if (t == hi) return closed_hi;  // covers t == hi == +inf (ideal point)
  return lo < t && t < hi;
}

namespace {

// Rebuilds a canonical interval list from pointwise membership.  `pts` must
// contain every endpoint at which membership can change; membership of open
// gaps is sampled at interior points.
std::vector<Interval> sweep(const std::vector<double>& pts,
                            const std::function<bool(double)>& at, bool ideal_covered) {
  std::vector<Interval> out;
  if (pts.empty()) return out;

  bool run = false;
  double run_lo = 0.0;
  bool run_lo_closed = false;
  auto begin_run = [&](double lo, bool closed) {
    run = true;
    run_lo = lo;
    run_lo_closed = closed;
  };
  auto end_run = [&](double hi, bool closed) {
    out.push_back(Interval(run_lo, hi, run_lo_closed, closed));
    run = false;
  };

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double p = pts[i];
    const bool pt = at(p);
    if (pt && !run) begin_run(p, true);
    else if (!pt && run) end_run(p, false);

    bool gap;
    if (i + 1 < pts.size()) {
      gap = at(0.5 * (p + pts[i + 1]));
    } else {
      gap = at(p + 1.0);  // all structure ends at the last endpoint
    }
    if (gap && !run) begin_run(p, false);
    else if (!gap && run) end_run(p, true);
  }
  if (run) end_run(kInf, ideal_covered);  // run extends through the tail
  return out;
}

std::vector<double> finite_endpoints(const std::vector<Interval>& parts) {
  std::vector<double> pts;
  for (const auto& iv : parts) {
    if (iv.empty()) continue;
    pts.push_back(iv.lo);
    if (iv.hi != kInf) pts.push_back(iv.hi);
  }
  return pts;
}

std::vector<Interval> canonicalize(const std::vector<Interval>& raw) {
  std::vector<double> pts = finite_endpoints(raw);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto member = [&raw](double t) {
    for (const auto& iv : raw)
      if (iv.contains(t)) return true;
    return false;
  };
  bool ideal = false;
  for (const auto& iv : raw)
    if (iv.unbounded() && iv.closed_hi) ideal = true;
  return sweep(pts, member, ideal);
}

}  // namespace

MeasurableSet::MeasurableSet(const Interval& iv) {
  if (!iv.empty()) parts_ = canonicalize({iv});
}

MeasurableSet::MeasurableSet(std::vector<Interval> raw) { parts_ = canonicalize(raw); }

bool MeasurableSet::contains(double t) const {
  for (const auto& iv : parts_) {
    if (t < iv.lo) return false;
    if (iv.contains(t)) return true;
  }
  return false;
}

double MeasurableSet::total_length() const {
  double s = 0.0;
  for (const auto& iv : parts_) s += iv.length();
  return s;
}

Interval MeasurableSet::hull() const {
  if (parts_.empty()) throw Error("hull of empty set");
  const Interval& a = parts_.front();
  const Interval& b = parts_.back();
  return Interval(a.lo, b.hi, a.closed_lo, b.closed_hi);
}

int indicator(const MeasurableSet& a, double t) { return a.contains(t) ? 1 : 0; }

MeasurableSet set_algebra(const MeasurableSet& a, const MeasurableSet& b, SetOp op) {
  std::vector<double> pts;
  for (const auto& iv : a.parts()) {
    pts.push_back(iv.lo);
    if (iv.hi != kInf) pts.push_back(iv.hi);
  }
  for (const auto& iv : b.parts()) {
    pts.push_back(iv.lo);
    if (iv.hi != kInf) pts.push_back(iv.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto combine = [op](bool in_a, bool in_b) {
    switch (op) {
      case SetOp::unite: return in_a || in_b;
      case SetOp::intersect: return in_a && in_b;
      case SetOp::diff: return in_a && !in_b;
    }
    return false;
  };
  auto member = [&](double t) { return combine(a.contains(t), b.contains(t)); };

  auto ideal_of = [](const MeasurableSet& s) {
    return !s.parts().empty() && s.parts().back().unbounded() && s.parts().back().closed_hi;
  };
  const bool ideal = combine(ideal_of(a), ideal_of(b));

  return MeasurableSet(sweep(pts, member, ideal));
}

}  // namespace gm
