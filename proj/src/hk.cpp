#include "gm/hk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "gm/errors.hpp"

namespace gm {

namespace {

// Gauss abscissa offset: each uniform subcell is split at its midpoint into
// two tagged cells whose tags sit at the two-point Gauss nodes.  The pair is
// a genuine tagged partition of the subcell, and for constant densities the
// Riemann sum reproduces composite two-point Gauss quadrature.
constexpr double kGaussOffset = 0.28867513459481288225457439025098;

struct Panel {
  enum class Mode { normal, exact, pinned };

  double lo = 0.0, hi = 0.0;
  int j = 0;              // 2^j uniform subcells, two Riemann terms each
  double value = 0.0;
  double delta = 0.0;     // |V(j) - V(j-1)|, the two-level local discrepancy
  double len_weight = 0.0;
  double mass_weight = 0.0;
  double share_floor = 0.0;  // absolute share slice for pin-exposed regions
  int stall = 0;
  Mode mode = Mode::normal;
  // pinned panels
  bool pin_left = true;
  bool pin_done = false;
  bool has_sibling = false;
  double sib_lo = 0.0, sib_hi = 0.0;
  double prev_sib_abs = kInf;

  double width() const { return hi - lo; }
};

class Engine {
 public:
  Engine(const Integrand& f, const MeasurableSet& a, const ScalarMeasure& m, double tol,
         const HKOptions& opt)
      : f_(f), set_(a), m_(m), tol_(tol), opt_(opt) {}

  HKResult run();

 private:
  double eval_f(double t, double scale) const;
  double eval_panel_at(const Panel& p, int j);
  void born(Panel& p);
  void refine(Panel& p);
  bool try_pin(Panel& p);
  void advance_pins();
  bool sibling_resolved(const Panel& pin) const;
  double sibling_value(const Panel& pin) const;
  double share(const Panel& p) const {
    return std::max(0.5 * tol_ * std::max(p.len_weight, p.mass_weight), p.share_floor);
  }
  void build_initial_panels();
  double ordered_sum() const;

  const Integrand& f_;
  const MeasurableSet& set_;
  const ScalarMeasure& m_;
  double tol_;
  HKOptions opt_;

  std::vector<Panel> panels_;
  std::vector<double> atom_locations_;
  double total_len_ = 0.0;
  double total_mass_ = 0.0;
  long long evals_ = 0;
  double exact_value_ = 0.0;  // atoms and other exactly-known cells
};

double Engine::eval_f(double t, double scale) const {
  if (f_.is_exempt(t)) {
    // Deterministic nudge keeps tags off the exempt list.
    const double step = (scale > 0 ? scale : 1.0) * 9.5367431640625e-5;
    for (int k = 1; k <= 4; ++k) {
      const double t2 = t + k * step;
      if (!f_.is_exempt(t2)) return f_(t2);
    }
  }
  return f_(t);
}

double Engine::eval_panel_at(const Panel& p, int j) {
  const int n = 1 << j;
  const double len = p.hi - p.lo;
  const double w = len / n;
  double acc = 0.0, comp = 0.0;
  auto add = [&acc, &comp](double x) {  // Kahan, fixed left-to-right order
    const double y = x - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  };

  const PiecewiseFn& rho = m_.density();
  double prev_cum = rho.cumulative(p.lo);
  for (int i = 0; i < n; ++i) {
    const double x0 = p.lo + w * i;
    const double x1 = (i == n - 1) ? p.hi : p.lo + w * (i + 1);
    const double xm = 0.5 * (x0 + x1);
    const double cum_m = rho.cumulative(xm);
    const double cum_r = rho.cumulative(x1);
    const double mass_l = cum_m - prev_cum;
    const double mass_r = cum_r - cum_m;
    prev_cum = cum_r;
    const double ww = x1 - x0;
    const double t1 = xm - ww * kGaussOffset;
    const double t2 = xm + ww * kGaussOffset;
    if (mass_l != 0.0) {
      const double v = eval_f(t1, ww);
      if (v != 0.0) {
        const double term = v * mass_l;
        if (!std::isfinite(term)) throw NonFiniteSum("non-finite Riemann term");
        add(term);
      }
    }
    if (mass_r != 0.0) {
      const double v = eval_f(t2, ww);
      if (v != 0.0) {
        const double term = v * mass_r;
        if (!std::isfinite(term)) throw NonFiniteSum("non-finite Riemann term");
        add(term);
      }
    }
  }
  evals_ += 2LL * n;
  if (evals_ > opt_.max_evals)
    throw NoConvergence("evaluation budget exhausted before the sums stabilized", 0);
  return acc;
}

void Engine::born(Panel& p) {
  const int j0 = std::max(p.j, 0);
  const double coarse = eval_panel_at(p, std::max(j0 - 1, 0));
  p.j = j0;
  p.value = (j0 == 0) ? coarse : eval_panel_at(p, j0);
  p.delta = (j0 == 0) ? 0.0 : std::abs(p.value - coarse);
}

void Engine::refine(Panel& p) {
  if (p.j < opt_.max_subdepth) {
    const double old = p.value;
    const double old_delta = p.delta;
    ++p.j;
    p.value = eval_panel_at(p, p.j);
    p.delta = std::abs(p.value - old);
    // A healthy panel improves its discrepancy by ~16x per halving; random
    // oscillatory residue does not.  Track persistent non-improvement.
    if (p.delta > share(p) && p.delta > 0.25 * old_delta)
      ++p.stall;
    else
      p.stall = std::max(0, p.stall - 1);
    return;
  }
  // Ladder cap reached: consider pinning, otherwise split in two.
  if (p.stall >= opt_.stall_levels && try_pin(p)) return;
  const double mid = 0.5 * (p.lo + p.hi);
  if (!(p.lo < mid && mid < p.hi)) {
    p.delta = 0.0;  // at floating-point resolution; freeze
    return;
  }
  const double parent_width = p.width();
  Panel right = p;
  right.lo = mid;
  right.len_weight = p.len_weight * (right.width() / parent_width);
  right.mass_weight =
      total_mass_ > 0 ? std::abs(m_.density_mass(right.lo, right.hi)) / total_mass_ : 0.0;
  Panel& left = p;
  left.hi = mid;
  left.len_weight -= right.len_weight;
  left.mass_weight =
      total_mass_ > 0 ? std::abs(m_.density_mass(left.lo, left.hi)) / total_mass_ : 0.0;
  born(left);
  born(right);
  panels_.push_back(std::move(right));
}

bool Engine::try_pin(Panel& p) {
  const double mass = m_.density_mass(p.lo, p.hi);
  for (int side = 0; side < 2; ++side) {
    const double e = side == 0 ? p.lo : p.hi;
    if (f_.is_exempt(e)) continue;
    if (std::binary_search(atom_locations_.begin(), atom_locations_.end(), e)) continue;
    const double v = f_(e);
    if (!std::isfinite(v)) continue;
    if (std::abs(v * mass) > share(p)) continue;
    p.mode = Panel::Mode::pinned;
    p.pin_left = (side == 0);
    p.value = v * mass;
    p.delta = 0.0;
    p.pin_done = false;
    p.has_sibling = false;
    p.prev_sib_abs = kInf;
    return true;
  }
  return false;
}

bool Engine::sibling_resolved(const Panel& pin) const {
  for (const Panel& q : panels_) {
    if (q.hi <= pin.sib_lo || q.lo >= pin.sib_hi) continue;
    if (q.mode == Panel::Mode::pinned) {
      if (!q.pin_done) return false;
    } else if (q.mode == Panel::Mode::normal && q.delta > share(q)) {
      return false;
    }
  }
  return true;
}

double Engine::sibling_value(const Panel& pin) const {
  double s = 0.0;
  for (const Panel& q : panels_) {
    if (q.hi <= pin.sib_lo || q.lo >= pin.sib_hi) continue;
    s += q.value;
  }
  return s;
}

void Engine::advance_pins() {
  const bool trace = std::getenv("GM_HK_TRACE") != nullptr;
  const std::size_t count = panels_.size();  // new siblings appended during the loop
  for (std::size_t i = 0; i < count; ++i) {
    Panel& p = panels_[i];
    if (p.mode != Panel::Mode::pinned || p.pin_done) continue;
    if (p.has_sibling) {
      if (!sibling_resolved(p)) continue;
      const double sv = std::abs(sibling_value(p));
      if (trace)
        std::fprintf(stderr, "[pin] range=[%.3g,%.3g] sib=[%.3g,%.3g] sibval=%.6g prev=%.3g\n",
                     p.lo, p.hi, p.sib_lo, p.sib_hi, sv, p.prev_sib_abs);
      // Accept the pinned tail once the exposed sliver is small and the
      // sliver sequence is not growing.
      const double accept = tol_ * opt_.pin_accept_fraction;
      if (sv <= accept && sv <= std::max(p.prev_sib_abs, 0.25 * accept)) {
        p.pin_done = true;
        continue;
      }
      p.prev_sib_abs = sv;
    }
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(p.lo < mid && mid < p.hi)) {
      p.pin_done = true;
      continue;
    }
    Panel sib;
    sib.j = std::max(1, opt_.initial_subdepth);
    if (p.pin_left) {
      sib.lo = mid;
      sib.hi = p.hi;
      p.hi = mid;
    } else {
      sib.lo = p.lo;
      sib.hi = mid;
      p.lo = mid;
    }
    sib.len_weight = total_len_ > 0 ? sib.width() / total_len_ : 0.0;
    sib.mass_weight =
        total_mass_ > 0 ? std::abs(m_.density_mass(sib.lo, sib.hi)) / total_mass_ : 0.0;
    // Exposed slivers only gate the pin-acceptance test, so they carry an
    // absolute share slice rather than a length-proportional one.
    sib.share_floor = tol_ / 256.0;
    p.len_weight = total_len_ > 0 ? p.width() / total_len_ : 0.0;
    const double tag = p.pin_left ? p.lo : p.hi;
    p.value = f_(tag) * m_.density_mass(p.lo, p.hi);
    p.sib_lo = sib.lo;
    p.sib_hi = sib.hi;
    p.has_sibling = true;
    born(sib);
    panels_.push_back(std::move(sib));
  }
}

void Engine::build_initial_panels() {
  for (const Atom& a : m_.atoms())
    if (set_.contains(a.location)) atom_locations_.push_back(a.location);
  std::sort(atom_locations_.begin(), atom_locations_.end());

  for (const auto& part : set_.parts()) {
    total_len_ += part.length();

    std::vector<double> cuts{part.lo, part.hi};
    auto add_cut = [&](double x) {
      if (x > part.lo && x < part.hi) cuts.push_back(x);
    };
    for (double x : atom_locations_) add_cut(x);
    for (double x : m_.density().breakpoints()) add_cut(x);
    for (double x : f_.breakpoints()) add_cut(x);
    for (double x : f_.exempt()) add_cut(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Atom singletons are exact tagged cells [a, a] with nu({a}) = weight.
    for (const Atom& a : m_.atoms()) {
      if (!part.contains(a.location)) continue;
      if (f_.is_exempt(a.location))
        throw Error("atom location coincides with an exempt point of the integrand");
      const double v = f_(a.location);
      if (!std::isfinite(v)) throw NonFiniteSum("integrand not finite at an atom");
      exact_value_ += v * a.weight;
    }

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Panel p;
      p.lo = cuts[i];
      p.hi = cuts[i + 1];
      if (!(p.lo < p.hi)) continue;
      p.j = std::max(1, opt_.initial_subdepth);
      panels_.push_back(p);
    }
  }

  for (Panel& p : panels_)
    total_mass_ += std::abs(m_.density_mass(p.lo, p.hi));
  for (Panel& p : panels_) {
    p.len_weight = total_len_ > 0 ? p.width() / total_len_ : 0.0;
    p.mass_weight = total_mass_ > 0 ? std::abs(m_.density_mass(p.lo, p.hi)) / total_mass_ : 0.0;
    born(p);
  }
}

double Engine::ordered_sum() const {
  std::vector<const Panel*> order;
  order.reserve(panels_.size());
  for (const Panel& p : panels_) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Panel* a, const Panel* b) {
    if (a->lo != b->lo) return a->lo < b->lo;
    return a->hi < b->hi;
  });
  double acc = exact_value_, comp = 0.0;
  for (const Panel* p : order) {
    const double y = p->value - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc;
}

HKResult Engine::run() {
  if (tol_ <= 0.0) throw std::invalid_argument("hk_integrate: tol must be positive");
  if (set_.empty()) return {0.0, 0.0, 0};
  build_initial_panels();
  if (panels_.empty()) return {exact_value_, 0.0, 1};

  double s_prev = 0.0;
  bool have_prev = false;
  double prev_delta_total = kInf;
  const bool trace = std::getenv("GM_HK_TRACE") != nullptr;

  for (int level = 1; level <= opt_.max_levels; ++level) {
    const double s = ordered_sum();
    if (!std::isfinite(s)) throw NonFiniteSum("Riemann sum is not finite");

    bool pins_open = false;
    int pin_count = 0;
    for (const Panel& p : panels_)
      if (p.mode == Panel::Mode::pinned) {
        ++pin_count;
        if (!p.pin_done) pins_open = true;
      }
    if (trace) {
      double max_delta = 0.0, min_lo = kInf, min_w = kInf;
      int flagged = 0;
      for (const Panel& p : panels_) {
        if (p.mode != Panel::Mode::normal) continue;
        max_delta = std::max(max_delta, p.delta);
        min_lo = std::min(min_lo, p.lo);
        min_w = std::min(min_w, p.width());
        if (p.delta > share(p)) ++flagged;
      }
      std::fprintf(stderr,
                   "[hk] level=%d panels=%zu pins=%d open=%d flagged=%d S=%.12g dS=%.3g "
                   "maxdelta=%.3g evals=%lld minw=%.3g\n",
                   level, panels_.size(), pin_count, pins_open ? 1 : 0, flagged, s,
                   have_prev ? std::abs(s - s_prev) : -1.0, max_delta, evals_, min_w);
    }

    if (have_prev) {
      const double delta_total = std::abs(s - s_prev);
      if (delta_total <= 0.5 * tol_) {
        // Two consecutive small inter-level discrepancies guard against an
        // aliased plateau of an unresolved oscillation.
        if (!pins_open && prev_delta_total <= 0.5 * tol_) return {s, delta_total, level};
        if (pins_open) advance_pins();  // shrink pinned tails
      }
      prev_delta_total = delta_total;
    }

    // Flag cells whose two-level discrepancy exceeds their pro-rata share of
    // the tolerance and halve the gauge there (deeper ladder, then splits).
    const std::size_t count = panels_.size();  // splits append
    for (std::size_t i = 0; i < count; ++i) {
      Panel& p = panels_[i];
      if (p.mode != Panel::Mode::normal) continue;
      if (p.delta > share(p)) refine(p);
    }
    s_prev = s;
    have_prev = true;
  }
  throw NoConvergence("level cap reached before the sums stabilized", opt_.max_levels);
}

}  // namespace

HKResult hk_integrate(const Integrand& f, const MeasurableSet& a, const ScalarMeasure& m,
                      double tol, const HKOptions& opt) {
  if (a.unbounded()) return hk_integrate_unbounded(f, a, m, tol, opt);
  Engine engine(f, a, m, tol, opt);
  return engine.run();
}

HKResult hk_integrate_unbounded(const Integrand& f, const MeasurableSet& a,
                                const ScalarMeasure& m, double tol, const HKOptions& opt) {
  if (!a.unbounded()) return hk_integrate(f, a, m, tol, opt);
  if (tol <= 0.0) throw std::invalid_argument("hk_integrate_unbounded: tol must be positive");
  if (!f.at_infinity_declared() || f.value_at_infinity() != 0.0)
    throw Error("unbounded integration requires f(+inf) declared as 0");

  std::vector<Interval> bounded;
  Interval tail_part;
  for (const auto& part : a.parts()) {
    if (part.unbounded())
      tail_part = part;
    else
      bounded.push_back(part);
  }

  HKResult base{0.0, 0.0, 0};
  if (!bounded.empty())
    base = hk_integrate(f, MeasurableSet(bounded), m, 0.5 * tol, opt);

  // The tail cell (b, +inf] is tagged +inf and contributes
  // f(+inf) * m((b, +inf]) = 0 by convention; only b remains to be chosen.
  const double lo = tail_part.lo;
  double b = std::max(lo + 1.0, 1.0);
  HKResult tail{0.0, 0.0, 0};

  auto finite_piece = [&](double up, double slice) {
    MeasurableSet piece(Interval(lo, up, tail_part.closed_lo, true));
    return hk_integrate(f, piece, m, slice, opt);
  };

  if (f.tail_bound()) {
    int doublings = 0;
    while (f.tail_bound()(b) > 0.25 * tol) {
      if (++doublings > opt.tail_max_doublings)
        throw TailNotControlled("tail bound did not fall below tol/4");
      b *= 2.0;
    }
    tail = finite_piece(b, 0.25 * tol);
  } else {
    HKResult prev = finite_piece(b, 0.125 * tol);
    int consec = 0;
    bool ok = false;
    for (int i = 0; i < opt.tail_max_doublings; ++i) {
      b *= 2.0;
      HKResult cur = finite_piece(b, 0.125 * tol);
      if (std::abs(cur.value - prev.value) <= 0.25 * tol) {
        if (++consec >= 2) {
          tail = cur;
          ok = true;
          break;
        }
      } else {
        consec = 0;
      }
      prev = cur;
    }
    if (!ok)
      throw TailNotControlled(
          "no decay envelope given and doubling b did not stabilize the integral");
  }

  return {base.value + tail.value, base.error_estimate + tail.error_estimate,
          std::max(base.levels_used, tail.levels_used)};
}

}  // namespace gm
