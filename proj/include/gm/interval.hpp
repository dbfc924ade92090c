#pragma once

#include <limits>
#include <vector>

namespace gm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One interval of the compactified half line.  `hi == +inf` together with
// `closed_hi` means the ideal point +inf belongs to the interval, matching
// neighborhoods of the form (b, +inf].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_lo = true;
  bool closed_hi = true;

  Interval() = default;
  Interval(double l, double h, bool cl = true, bool ch = true);

  static Interval closed(double l, double h) { return Interval(l, h, true, true); }
  static Interval open(double l, double h) { return Interval(l, h, false, false); }
  static Interval left_open(double l, double h) { return Interval(l, h, false, true); }
  static Interval right_open(double l, double h) { return Interval(l, h, true, false); }
  static Interval point(double p) { return Interval(p, p, true, true); }

  bool empty() const { return lo == hi && !(closed_lo && closed_hi); }
  bool degenerate() const { return lo == hi && closed_lo && closed_hi; }
  bool unbounded() const { return hi == kInf; }
  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }

  // Membership with closure semantics; t == +inf tests the ideal point.
  bool contains(double t) const;

  bool operator==(const Interval&) const = default;
};

// Canonical finite disjoint union of intervals, ordered by lo.  Adjacent or
// overlapping pieces are merged, so the representation of a set is unique.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  explicit MeasurableSet(const Interval& iv);
  explicit MeasurableSet(std::vector<Interval> raw);  // canonicalizes

  static MeasurableSet empty_set() { return MeasurableSet(); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double t) const;
  bool unbounded() const { return !parts_.empty() && parts_.back().unbounded(); }
  double total_length() const;

  // Smallest interval containing the set (undefined on the empty set).
  Interval hull() const;

  bool operator==(const MeasurableSet&) const = default;

 private:
  std::vector<Interval> parts_;
};

enum class SetOp { unite, intersect, diff };

int indicator(const MeasurableSet& a, double t);
MeasurableSet set_algebra(const MeasurableSet& a, const MeasurableSet& b, SetOp op);

inline MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b) {
  return set_algebra(a, b, SetOp::unite);
}
inline MeasurableSet set_intersect(const MeasurableSet& a, const MeasurableSet& b) {
  return set_algebra(a, b, SetOp::intersect);
}
inline MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b) {
  return set_algebra(a, b, SetOp::diff);
}

}  // namespace gm
