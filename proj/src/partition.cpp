#include "gm/partition.hpp"

#include <cmath>
#include <deque>

#include "gm/errors.hpp"

namespace gm {

namespace {

// cell inside (tag - d, tag + d), with non-strict comparison at open ends.
bool cell_in_ball(const Interval& c, double tag, double d) {
  const double lo_bound = tag - d;
  const double hi_bound = tag + d;
  const bool lo_ok = c.closed_lo ? (c.lo > lo_bound) : (c.lo >= lo_bound);
  const bool hi_ok = c.closed_hi ? (c.hi < hi_bound) : (c.hi <= hi_bound);
  return lo_ok && hi_ok;
}

bool cell_in_tail(const Interval& c, double b_inf) {
  const bool lo_ok = c.closed_lo ? (c.lo > b_inf) : (c.lo >= b_inf);
  return lo_ok && c.unbounded();
}

}  // namespace

bool is_delta_fine(const TaggedPartition& p, const Gauge& delta) {
  for (const auto& item : p.items) {
    if (item.tag == kInf) {
      if (!delta.at_infinity_cutoff) return false;
      if (!cell_in_tail(item.cell, *delta.at_infinity_cutoff)) return false;
      continue;
    }
    const double d = delta(item.tag);
    if (!(d > 0.0)) return false;
    if (!cell_in_ball(item.cell, item.tag, d)) return false;
  }
  return true;
}

TaggedPartition refine_to_delta_fine(const MeasurableSet& a, const Gauge& delta,
                                     std::size_t budget) {
  TaggedPartition out;
  std::deque<Interval> work;

  for (const auto& part : a.parts()) {
    if (!part.unbounded()) {
      work.push_back(part);
      continue;
    }
    if (!delta.at_infinity_cutoff)
      throw Error("refine_to_delta_fine: unbounded set but gauge has no +inf cutoff");
    const double b = *delta.at_infinity_cutoff;
    if (part.lo >= b) {
      // The whole part already fits in the neighborhood of +inf.
      out.items.push_back({part, kInf});
      continue;
    }
    out.items.push_back({Interval(b, kInf, false, part.closed_hi), kInf});
    work.push_back(Interval(part.lo, b, part.closed_lo, true));
  }

  while (!work.empty()) {
    if (out.items.size() + work.size() > budget) throw RefinementBudgetExceeded(budget);
    Interval c = work.front();
    work.pop_front();
    if (c.empty()) continue;

    // Candidate tags: midpoint first, then contained endpoints.
    const double mid = c.midpoint();
    double chosen = kInf;
    bool found = false;
    const double cand[3] = {mid, c.lo, c.hi};
    for (double t : cand) {
      if (!c.contains(t)) continue;
      const double d = delta(t);
      if (!(d > 0.0)) throw Error("gauge width must be positive");
      if (cell_in_ball(c, t, d)) {
        chosen = t;
        found = true;
        break;
      }
    }
    if (found) {
      out.items.push_back({c, chosen});
      continue;
    }
    if (!(c.lo < mid && mid < c.hi))
      throw RefinementBudgetExceeded(budget);  // cannot bisect further
    work.push_front(Interval(mid, c.hi, true, c.closed_hi));
    work.push_front(Interval(c.lo, mid, c.closed_lo, false));
  }
  return out;
}

double riemann_sum(const Integrand& f, const TaggedPartition& p, const ScalarMeasure& nu) {
  double s = 0.0;
  for (const auto& item : p.items) {
    double v;
    if (item.tag == kInf) {
      if (!f.at_infinity_declared())
        throw NonFiniteSum("tag at +inf but f(+inf) not declared");
      v = f.value_at_infinity();
      if (v != 0.0) throw NonFiniteSum("tag at +inf requires f(+inf) = 0");
    } else {
      v = f(item.tag);
    }
    const double m = nu.measure_of(item.cell);
    if (v == 0.0) continue;  // 0 * (+-inf) = 0
    if (!std::isfinite(m) || !std::isfinite(v))
      throw NonFiniteSum("non-finite Riemann term f(tag) * nu(cell)");
    s += v * m;
  }
  return s;
}

}  // namespace gm
