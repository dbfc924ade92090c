#pragma once

#include <cstdint>

#include "gm/integrand.hpp"
#include "gm/interval.hpp"
#include "gm/scalar_measure.hpp"

namespace gm {

struct HKOptions {
  int initial_subdepth = 1;      // panels start at 2^j uniform subcells
  int max_subdepth = 12;         // per-panel cap before the panel splits
  int max_levels = 500;
  long long max_evals = 200'000'000;
  int stall_levels = 6;          // non-improving levels before a pin is considered
  double pin_accept_fraction = 0.125;  // pinned tail accepted below tol * this
  int tail_max_doublings = 48;
};

struct HKResult {
  double value = 0.0;
  double error_estimate = 0.0;  // last inter-level discrepancy
  int levels_used = 0;
};

// Adaptive Henstock-Kurzweil integral of f over A against m.  Level k holds a
// delta-fine tagged partition (uniform Gauss-pair tags within panels); where
// the two-level local discrepancy of a cell exceeds its pro-rata tolerance
// share the gauge is halved there; the loop stops when two successive Riemann
// sums differ by at most tol/2.  Throws NoConvergence at the level or
// evaluation caps and NonFiniteSum on inf * nonzero terms.
HKResult hk_integrate(const Integrand& f, const MeasurableSet& a, const ScalarMeasure& m,
                      double tol, const HKOptions& opt = {});

// Variant for sets reaching +inf: the tail cell (b, +inf] is tagged +inf and
// contributes 0 by the 0 * (+inf) = 0 convention (f(+inf) = 0 must be
// declared); b grows until the remainder is controlled by the integrand's
// declared tail bound, or stabilizes under doubling.  Throws
// TailNotControlled when neither happens.
HKResult hk_integrate_unbounded(const Integrand& f, const MeasurableSet& a,
                                const ScalarMeasure& m, double tol, const HKOptions& opt = {});

}  // namespace gm
