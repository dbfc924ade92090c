#include "gm/vector_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gm/errors.hpp"
#include "gm/threading.hpp"

namespace gm {

VectorMeasure::VectorMeasure(std::vector<ScalarMeasure> components, SpaceNorm norm,
                             std::vector<MeasurableSet> declared_null_sets)
    : components_(std::move(components)), norm_(norm), null_sets_(std::move(declared_null_sets)) {
  if (components_.empty()) throw std::invalid_argument("vector measure needs >= 1 component");
}

std::vector<double> VectorMeasure::measure_of(const MeasurableSet& a) const {
  std::vector<double> v(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) v[i] = components_[i].measure_of(a);
  return v;
}

MeasurableSet VectorMeasure::null_union() const {
  MeasurableSet u;
  for (const auto& n : null_sets_) u = set_union(u, n);
  return u;
}

ScalarMeasure apply_functional(const VectorMeasure& mu, std::span<const double> functional) {
  if (static_cast<int>(functional.size()) != mu.dim())
    throw std::invalid_argument("functional dimension mismatch");
  std::vector<std::pair<double, const ScalarMeasure*>> terms;
  terms.reserve(functional.size());
  for (std::size_t i = 0; i < functional.size(); ++i)
    terms.push_back({functional[i], &mu.components()[i]});
  return ScalarMeasure::linear_combination(terms);
}

double semivariation(const VectorMeasure& mu, const MeasurableSet& a,
                     const DirectionGrid& grid) {
  if (grid.dim() != mu.dim()) throw std::invalid_argument("grid dimension mismatch");
  if (a.empty()) return 0.0;
  std::vector<double> vals(grid.size());
  parallel_for_indexed(grid.size(), [&](std::size_t i) {
    ScalarMeasure m = apply_functional(mu, grid.direction(i));
    vals[i] = m.total_variation().measure_of(a);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);  // fixed grid order
  return best;
}

double variation(const VectorMeasure& mu, const MeasurableSet& a, int depth) {
  if (depth < 0) throw std::invalid_argument("variation: depth must be >= 0");
  double total = 0.0;
  for (const auto& part : a.parts()) {
    if (part.unbounded()) throw Error("variation over unbounded sets is not supported");
    const int cells = 1 << depth;
    const double w = part.length() / cells;
    if (w == 0.0) {
      total += vector_norm(mu.measure_of(MeasurableSet(part)), mu.space_norm());
      continue;
    }
    for (int i = 0; i < cells; ++i) {
      const double lo = part.lo + i * w;
      const double hi = (i == cells - 1) ? part.hi : part.lo + (i + 1) * w;
      Interval cell(lo, hi, i == 0 ? part.closed_lo : true,
                    i == cells - 1 ? part.closed_hi : false);
      total += vector_norm(mu.measure_of(MeasurableSet(cell)), mu.space_norm());
    }
  }
  return total;
}

VectorMeasure pushforward_operator(const std::vector<std::vector<double>>& u,
                                   const VectorMeasure& mu) {
  if (u.empty()) throw std::invalid_argument("pushforward: empty matrix");
  std::vector<ScalarMeasure> comps;
  comps.reserve(u.size());
  for (const auto& row : u) {
    if (static_cast<int>(row.size()) != mu.dim())
      throw std::invalid_argument("pushforward: row dimension mismatch");
    comps.push_back(apply_functional(mu, row));
  }
  return VectorMeasure(std::move(comps), mu.space_norm(), mu.declared_null_sets());
}

double ess_sup(const Integrand& f, const MeasurableSet& a, const VectorMeasure& mu) {
  MeasurableSet domain = set_difference(a, mu.null_union());
  double best = 0.0;
  bool any = false;
  for (const auto& part : domain.parts()) {
    if (part.unbounded()) throw Error("ess_sup over unbounded sets is not supported");
    if (part.length() == 0.0) {
      best = std::max(best, std::abs(f(part.lo)));
      any = true;
      continue;
    }
    const int n = 2048;
    double local_best = 0.0, local_at = part.lo;
    for (int i = 0; i <= n; ++i) {
      const double t = part.lo + (part.hi - part.lo) * i / n;
      if (!part.contains(t)) continue;
      const double v = std::abs(f(t));
      if (v >= local_best) {
        local_best = v;
        local_at = t;
      }
    }
    // Local refinement around the best sample.
    double w = (part.hi - part.lo) / n;
    double center = local_at;
    for (int it = 0; it < 40; ++it) {
      for (int s = -2; s <= 2; ++s) {
        const double t = center + s * w / 4.0;
        if (t < part.lo || t > part.hi || !part.contains(t)) continue;
        const double v = std::abs(f(t));
        if (v > local_best) {
          local_best = v;
          center = t;
        }
      }
      w *= 0.5;
    }
    best = std::max(best, local_best);
    any = true;
  }
  if (!any) return 0.0;
  return best;
}

}  // namespace gm
