#pragma once

#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "gm/hk.hpp"
#include "gm/integrand.hpp"
#include "gm/piecewise.hpp"
#include "gm/support_set.hpp"
#include "gm/vector_measure.hpp"

namespace gm {

// Time-varying generators: the set-valued density Gamma(t), one compact
// convex set per point, with piecewise-smooth parameter functions.
struct BoxDensity {
  std::vector<PiecewiseFn> center;
  std::vector<PiecewiseFn> radii;  // pointwise >= 0
};
struct BallDensity {
  std::vector<PiecewiseFn> center;
  PiecewiseFn radius;  // pointwise >= 0
};
struct ZonotopeDensity {
  std::vector<PiecewiseFn> center;
  std::vector<std::vector<PiecewiseFn>> generators;
};

class SetValuedDensity {
 public:
  SetValuedDensity(int dim, BoxDensity d);
  SetValuedDensity(int dim, BallDensity d);
  SetValuedDensity(int dim, ZonotopeDensity d);

  int dim() const { return dim_; }

  // sigma(dir, Gamma(.)) as a piecewise function of t; polynomial
  // parameters stay exactly integrable.
  PiecewiseFn support_profile(std::span<const double> dir) const;
  double support_at(std::span<const double> dir, double t) const;

  std::vector<PiecewiseFn> center_profiles() const;
  // The support-attaining point of Gamma(.) in direction dir, per component.
  std::vector<PiecewiseFn> extremal_profiles(std::span<const double> dir) const;

  // t -> sup_{grid} |sigma(u, Gamma(t))|, the grid surrogate for |Gamma(t)|.
  Integrand norm_integrand(const GridPtr& grid) const;

 private:
  int dim_;
  std::variant<BoxDensity, BallDensity, ZonotopeDensity> body_;
};

// Set-valued measure M(A) with density Gamma against a nonnegative base
// scalar measure: sigma(u, M(A)) = int_A sigma(u, Gamma(t)) d(base).
class SetValuedMeasure {
 public:
  SetValuedMeasure(SetValuedDensity density, ScalarMeasure base);

  int dim() const { return density_.dim(); }
  const SetValuedDensity& density() const { return density_; }
  const ScalarMeasure& base() const { return base_; }

  // sigma(dir, M(.)) as a scalar measure (density product, mapped atoms).
  ScalarMeasure scalarized(std::span<const double> dir) const;

 private:
  SetValuedDensity density_;
  ScalarMeasure base_;
};

// sigma(u, M(A)) per grid direction via the gauge integrator.
SupportSet sv_measure_of(const SetValuedMeasure& m, const MeasurableSet& a, const GridPtr& grid,
                         double tol, const HKOptions& opt = {});

// The set-valued Kluvanek-Lewis-Henstock integral W_A: per direction
// h(u) = (HK) int_A f d sigma(u, M(.)), validated for sublinearity.
// Sign-changing f typically yields NotConvexlyIntegrable: no compact convex
// W_A has those support values.
SupportSet sv_kl_henstock_integral(const Integrand& f, const MeasurableSet& a,
                                   const SetValuedMeasure& m, const GridPtr& grid, double tol,
                                   const HKOptions& opt = {});

struct SteinerRule {};
struct ExtremalRule {
  std::vector<double> direction;
};
using SelectionRule = std::variant<SteinerRule, ExtremalRule>;

// A vector measure with values inside M: the center path or the
// support-attaining path of Gamma.
VectorMeasure selection(const SetValuedMeasure& m, const SelectionRule& rule,
                        SpaceNorm norm = SpaceNorm::euclidean);

// sup over dyadic partitions (depth bisections) of sum |M(A_i)|.
double sv_variation(const SetValuedMeasure& m, const MeasurableSet& a, int depth,
                    const GridPtr& grid, double tol);

// The indefinite set-valued integral A -> W_A over a family; requires f >= 0.
std::vector<std::pair<MeasurableSet, SupportSet>> sv_indefinite(
    const Integrand& f, const SetValuedMeasure& m, const std::vector<MeasurableSet>& family,
    const GridPtr& grid, double tol);

// Hausdorff distance between the two sides of the Radon-Nikodym identity:
// (HKL) int_A f dM versus the direct support integral of f sigma(u, Gamma)
// against the base.  Small by construction for honest inputs; requires
// f >= 0.
double rn_equality_check(const Integrand& f, const SetValuedMeasure& m, const MeasurableSet& a,
                         const GridPtr& grid, double tol);

}  // namespace gm
