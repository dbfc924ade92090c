#include "gm/scalar_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gm/errors.hpp"

namespace gm {

ScalarMeasure::ScalarMeasure(PiecewiseFn density, std::vector<Atom> atoms,
                             std::optional<double> tail_mass)
    : density_(std::move(density)), atoms_(std::move(atoms)), tail_mass_(tail_mass) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (std::size_t i = 0; i + 1 < atoms_.size(); ++i)
    if (atoms_[i].location == atoms_[i + 1].location)
      throw std::invalid_argument("duplicate atom location");
  atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(),
                              [](const Atom& a) { return a.weight == 0.0; }),
               atoms_.end());
}

ScalarMeasure ScalarMeasure::lebesgue(const Interval& domain) {
  if (domain.unbounded()) {
    PiecewiseFn density({domain.lo, domain.lo + 1.0}, {Polynomial::constant(1.0)},
                        PieceFn(Polynomial::constant(1.0)));
    return ScalarMeasure(std::move(density), {}, kInf);
  }
  return ScalarMeasure(PiecewiseFn::constant(1.0, domain.lo, domain.hi));
}

ScalarMeasure ScalarMeasure::from_atoms(std::vector<Atom> atoms) {
  return ScalarMeasure(PiecewiseFn(), std::move(atoms));
}

double ScalarMeasure::atom_mass_in(const Interval& iv) const {
  double s = 0.0;
  for (const Atom& a : atoms_)
    if (iv.contains(a.location)) s += a.weight;
  return s;
}

double ScalarMeasure::measure_of(const Interval& iv) const {
  if (iv.empty()) return 0.0;
  double total = atom_mass_in(iv);
  if (!iv.unbounded()) {
    total += density_.integrate(iv.lo, iv.hi);
    return total;
  }
  // Unbounded slice: mass of (x, +inf] is the declared tail mass adjusted by
  // the density between x and the last breakpoint.
  if (!tail_mass_) {
    if (density_.has_tail())
      throw Error("unbounded query on a measure with a tail density but no declared tail mass");
    if (!density_.trivial() && iv.lo < density_.domain_hi())
      total += density_.integrate(iv.lo, density_.domain_hi());
    return total;
  }
  const double bk = density_.trivial() ? iv.lo : density_.domain_hi();
  const double tm = *tail_mass_;
  if (iv.lo <= bk) {
    const double finite = density_.trivial() ? 0.0 : density_.integrate(iv.lo, bk);
    total += finite + tm;
  } else {
    if (std::isinf(tm)) {
      total += tm;
    } else {
      total += tm - density_.integrate(bk, iv.lo);
    }
  }
  return total;
}

double ScalarMeasure::measure_of(const MeasurableSet& a) const {
  double s = 0.0;
  for (const auto& iv : a.parts()) s += measure_of(iv);
  return s;
}

void ScalarMeasure::segment_masses(double l, double r, int n, double* out) const {
  const double w = (r - l) / n;
  double prev = density_.cumulative(l);
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? r : l + w * i;
    const double cur = density_.cumulative(x);
    out[i - 1] = cur - prev;
    prev = cur;
  }
}

ScalarMeasure ScalarMeasure::total_variation() const {
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const Atom& a : atoms_) atoms.push_back({a.location, std::abs(a.weight)});
  std::optional<double> tail;
  if (tail_mass_) tail = std::abs(*tail_mass_);
  return ScalarMeasure(density_.trivial() ? PiecewiseFn() : density_.absolute(),
                       std::move(atoms), tail);
}

ScalarMeasure ScalarMeasure::linear_combination(
    const std::vector<std::pair<double, const ScalarMeasure*>>& terms) {
  std::vector<std::pair<double, const PiecewiseFn*>> densities;
  for (const auto& [c, m] : terms)
    if (!m->density().trivial()) densities.push_back({c, &m->density()});
  PiecewiseFn density =
      densities.empty() ? PiecewiseFn() : PiecewiseFn::linear_combination(densities);

  std::map<double, double> merged;
  for (const auto& [c, m] : terms)
    for (const Atom& a : m->atoms()) merged[a.location] += c * a.weight;
  std::vector<Atom> atoms;
  for (const auto& [loc, w] : merged)
    if (w != 0.0) atoms.push_back({loc, w});

  std::optional<double> tail;
  bool any_tail = false;
  double tail_sum = 0.0;
  for (const auto& [c, m] : terms) {
    if (m->tail_mass()) {
      any_tail = true;
      tail_sum += c * *m->tail_mass();
    }
  }
  if (any_tail) tail = tail_sum;
  return ScalarMeasure(std::move(density), std::move(atoms), tail);
}

}  // namespace gm
