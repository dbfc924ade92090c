#pragma once

#include <utility>
#include <vector>

#include "gm/direction_grid.hpp"
#include "gm/hk.hpp"
#include "gm/vector_measure.hpp"

namespace gm {

enum class KLMode {
  signed_measure,  // integrate against x*mu (classical Kluvanek-Lewis)
  variation        // integrate against |x*mu| (the literal Def 2.3 form)
};

struct KLResult {
  std::vector<double> value;  // x_A
  double residual = 0.0;      // max over grid of |x*(x_A) - v(x*)|
  KLMode mode = KLMode::signed_measure;
};

// The Kluvanek-Lewis-Henstock integral: per direction x* computes
// v(x*) = (HK) int_A f d(x*mu) (signed mode) or d|x*mu| (variation mode),
// then solves x*(x_A) = v(x*) over the grid in least squares.  A residual
// above 100*tol means no x_A satisfies the defining identity to tolerance
// and NotHKLIntegrable is thrown.  Variation mode demands a hemisphere grid:
// v is even in x* while x*(x_A) is odd, so an antipodally closed grid only
// admits x_A = 0 (reported as the antipodal degeneracy).
KLResult kl_henstock_integral(const Integrand& f, const MeasurableSet& a,
                              const VectorMeasure& mu, const DirectionGrid& grid, double tol,
                              KLMode mode = KLMode::signed_measure, const HKOptions& opt = {});

// The indefinite integral nu(A) = (HKL) int_A f dmu over a finite family.
std::vector<std::pair<MeasurableSet, KLResult>> indefinite_integral(
    const Integrand& f, const VectorMeasure& mu, const std::vector<MeasurableSet>& family,
    const DirectionGrid& grid, double tol, KLMode mode = KLMode::signed_measure);

// Alexiewicz norm lower bound: max over grid x family of
// |(HK) int_A f d|x*mu||.
double alexiewicz_norm(const Integrand& f, const VectorMeasure& mu, const DirectionGrid& grid,
                       const std::vector<MeasurableSet>& family, double tol);

// All dyadic subintervals of `domain` down to `max_depth` bisections.
std::vector<MeasurableSet> dyadic_subintervals(const Interval& domain, int max_depth);

}  // namespace gm
