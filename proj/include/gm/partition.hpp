#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gm/integrand.hpp"
#include "gm/interval.hpp"
#include "gm/scalar_measure.hpp"

namespace gm {

inline constexpr std::size_t kDefaultRefineBudget = 1'000'000;

// Gauge on [a, +inf): a positive half-width d(x), plus a cutoff b for the
// neighborhood (b, +inf] of the ideal point when the domain is compactified.
struct Gauge {
  std::function<double(double)> width;
  std::optional<double> at_infinity_cutoff;

  static Gauge uniform(double h) {
    return Gauge{[h](double) { return h; }, std::nullopt};
  }
  static Gauge uniform(double h, double b_inf) {
    return Gauge{[h](double) { return h; }, b_inf};
  }
  double operator()(double x) const { return width(x); }
};

// A cell with its tag; tag == +inf marks the ideal point on tail cells.
struct TaggedCell {
  Interval cell;
  double tag = 0.0;
};

struct TaggedPartition {
  std::vector<TaggedCell> items;

  bool tags_in_cells() const {
    for (const auto& it : items)
      if (!it.cell.contains(it.tag)) return false;
    return true;
  }
  // Union of the cells as a measurable set.
  MeasurableSet covered() const {
    std::vector<Interval> ivs;
    ivs.reserve(items.size());
    for (const auto& it : items) ivs.push_back(it.cell);
    return MeasurableSet(std::move(ivs));
  }
};

// True iff every cell lies inside the gauge ball of its tag.
bool is_delta_fine(const TaggedPartition& p, const Gauge& delta);

// Constructs a delta-fine tagged partition of A by recursive bisection: tags
// are tried at the midpoint first, then at contained endpoints; an unbounded
// part becomes finite cells up to the gauge cutoff plus one tail cell tagged
// +inf.  Throws RefinementBudgetExceeded past `budget` cells.
TaggedPartition refine_to_delta_fine(const MeasurableSet& a, const Gauge& delta,
                                     std::size_t budget = kDefaultRefineBudget);

// S(f, P) = sum f(tag_j) nu(cell_j) in cell order, with the convention
// 0 * (+-inf) = 0.  Throws NonFiniteSum on inf * nonzero.
double riemann_sum(const Integrand& f, const TaggedPartition& p, const ScalarMeasure& nu);

}  // namespace gm
