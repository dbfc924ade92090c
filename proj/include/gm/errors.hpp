#pragma once

#include <stdexcept>
#include <string>

namespace gm {

// Base class for all gauge-measure errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// refine_to_delta_fine gave up: the gauge demands more cells than the
// configured budget allows (typically a gauge that is not bounded below).
struct RefinementBudgetExceeded : Error {
  explicit RefinementBudgetExceeded(std::size_t budget)
      : Error("refinement budget of " + std::to_string(budget) + " cells exceeded"),
        budget(budget) {}
  std::size_t budget;
};

// A Riemann term f(tag) * nu(cell) came out as inf * nonzero or NaN.
struct NonFiniteSum : Error {
  using Error::Error;
};

// The adaptive integrator ran out of levels or evaluations before two
// successive sums agreed to tol/2.
struct NoConvergence : Error {
  NoConvergence(const std::string& what, int levels) : Error(what), levels(levels) {}
  int levels;
};

// Sign-change isolation of a density failed at the configured resolution.
struct SignChangeResolutionFailure : Error {
  using Error::Error;
};

// Tail of an unbounded integral did not stabilize and no decay envelope
// was supplied.
struct TailNotControlled : Error {
  using Error::Error;
};

// No vector x_A satisfies x*(x_A) = v(x*) over the direction grid to
// tolerance. `antipodal_degeneracy` marks the variation-mode grid defect
// rather than a data failure.
struct NotHKLIntegrable : Error {
  NotHKLIntegrable(const std::string& what, double residual, bool degeneracy = false)
      : Error(what), residual(residual), antipodal_degeneracy(degeneracy) {}
  double residual;
  bool antipodal_degeneracy;
};

// Two support sets live on different direction grids.
struct GridMismatch : Error {
  using Error::Error;
};

// scale(lambda, A) with lambda < 0; the support identity needs lambda >= 0.
struct NegativeScalar : Error {
  using Error::Error;
};

// Candidate support values are not sublinear: no compact convex W_A exists.
struct NotConvexlyIntegrable : Error {
  NotConvexlyIntegrable(const std::string& what, double violation)
      : Error(what), worst_violation(violation) {}
  double worst_violation;
};

// A lab generator failed its own precondition (domination, boundedness,
// uniform integrability).
struct GeneratorViolatesDomination : Error {
  using Error::Error;
};

// Config file or expression rejected; carries a 1-based position.
struct ConfigError : Error {
  ConfigError(const std::string& what, int line = 0, int col = 0)
      : Error(what), line(line), col(col) {}
  int line;
  int col;
};

}  // namespace gm
