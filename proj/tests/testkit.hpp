#pragma once

// Deterministic generators shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gm/integrand.hpp"
#include "gm/interval.hpp"
#include "gm/piecewise.hpp"
#include "gm/scalar_measure.hpp"

namespace testkit {

// splitmix64: tiny, portable, identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }

 private:
  std::uint64_t state_;
};

inline gm::Polynomial random_polynomial(Rng& rng, int max_degree, double coeff_range = 2.0) {
  const int deg = rng.uniform_int(max_degree + 1);
  std::vector<double> c(static_cast<std::size_t>(deg) + 1);
  for (double& x : c) x = rng.uniform(-coeff_range, coeff_range);
  if (c.back() == 0.0) c.back() = 1.0;
  return gm::Polynomial(c);
}

// Piecewise polynomial on [lo, hi] with up to `max_pieces` random pieces.
inline gm::PiecewiseFn random_piecewise_poly(Rng& rng, double lo, double hi, int max_pieces = 3,
                                             int max_degree = 4) {
  const int pieces = 1 + rng.uniform_int(max_pieces);
  std::vector<double> bps{lo};
  for (int i = 1; i < pieces; ++i) bps.push_back(rng.uniform(lo, hi));
  bps.push_back(hi);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<gm::PieceFn> ps;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    ps.push_back(random_polynomial(rng, max_degree));
  return gm::PiecewiseFn(bps, std::move(ps));
}

inline gm::Integrand integrand_of(const gm::PiecewiseFn& p) {
  return gm::Integrand::from_piecewise(p);
}

inline gm::ScalarMeasure random_density_measure(Rng& rng, double lo, double hi,
                                                bool with_atoms = false) {
  std::vector<gm::Atom> atoms;
  if (with_atoms) {
    const int n = rng.uniform_int(3);
    for (int i = 0; i < n; ++i) atoms.push_back({rng.uniform(lo, hi), rng.uniform(-1.0, 1.0)});
  }
  return gm::ScalarMeasure(random_piecewise_poly(rng, lo, hi), std::move(atoms));
}

// Random union of up to `max_parts` disjoint closed intervals inside [lo, hi].
inline gm::MeasurableSet random_set(Rng& rng, double lo, double hi, int max_parts = 3) {
  const int n = 1 + rng.uniform_int(max_parts);
  std::vector<double> pts;
  for (int i = 0; i < 2 * n; ++i) pts.push_back(rng.uniform(lo, hi));
  std::sort(pts.begin(), pts.end());
  std::vector<gm::Interval> parts;
  for (int i = 0; i + 1 < 2 * n; i += 2)
    if (pts[i] < pts[i + 1]) parts.push_back(gm::Interval::closed(pts[i], pts[i + 1]));
  return gm::MeasurableSet(parts);
}

// Random measurable subset of A: intersect with a random union.
inline gm::MeasurableSet random_subset(Rng& rng, const gm::MeasurableSet& a) {
  if (a.empty()) return a;
  const auto h = a.hull();
  return gm::set_intersect(a, random_set(rng, h.lo, h.hi == gm::kInf ? h.lo + 1.0 : h.hi));
}

struct SimpleFunction {
  std::vector<double> coefficients;
  std::vector<gm::MeasurableSet> sets;
  gm::Integrand integrand;
};

// s = sum_i alpha_i chi_{E_i} with disjoint dyadic-aligned E_i in [lo, hi].
inline SimpleFunction random_simple_function(Rng& rng, double lo, double hi, int max_terms = 4,
                                             bool nonneg = false) {
  const int cells = 8;
  const double w = (hi - lo) / cells;
  const int terms = 1 + rng.uniform_int(max_terms);
  SimpleFunction s;
  std::vector<int> taken(cells, 0);
  std::vector<double> bps;
  for (int k = 0; k < terms; ++k) {
    const int a = rng.uniform_int(cells);
    const int b = a + 1 + rng.uniform_int(cells - a);
    bool clash = false;
    for (int i = a; i < b; ++i)
      if (taken[i]) clash = true;
    if (clash) continue;
    for (int i = a; i < b; ++i) taken[i] = 1;
    const double alpha = nonneg ? rng.uniform(0.0, 2.0) : rng.uniform(-2.0, 2.0);
    s.coefficients.push_back(alpha);
    s.sets.push_back(gm::MeasurableSet(gm::Interval(lo + a * w, lo + b * w, true, b == cells)));
    bps.push_back(lo + a * w);
    bps.push_back(lo + b * w);
  }
  if (s.sets.empty()) {
    s.coefficients.push_back(nonneg ? 1.0 : -1.0);
    s.sets.push_back(gm::MeasurableSet(gm::Interval::closed(lo, lo + w)));
    bps.push_back(lo);
    bps.push_back(lo + w);
  }
  auto sets = s.sets;
  auto coef = s.coefficients;
  s.integrand = gm::Integrand([sets, coef](double t) {
                  double v = 0.0;
                  for (std::size_t i = 0; i < sets.size(); ++i)
                    if (sets[i].contains(t)) v += coef[i];
                  return v;
                }).with_breakpoints(bps);
  return s;
}

}  // namespace testkit
