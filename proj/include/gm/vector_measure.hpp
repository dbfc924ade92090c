#pragma once

#include <span>
#include <vector>

#include "gm/direction_grid.hpp"
#include "gm/hk.hpp"
#include "gm/integrand.hpp"
#include "gm/interval.hpp"
#include "gm/scalar_measure.hpp"

namespace gm {

// Vector measure mu: Sigma -> R^d, one scalar measure per coordinate, with a
// selectable norm on R^d and explicitly declared null sets (the computable
// stand-in for "||mu||(M) = 0").
class VectorMeasure {
 public:
  VectorMeasure(std::vector<ScalarMeasure> components, SpaceNorm norm = SpaceNorm::euclidean,
                std::vector<MeasurableSet> declared_null_sets = {});

  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<ScalarMeasure>& components() const { return components_; }
  SpaceNorm space_norm() const { return norm_; }
  const std::vector<MeasurableSet>& declared_null_sets() const { return null_sets_; }

  std::vector<double> measure_of(const MeasurableSet& a) const;
  MeasurableSet null_union() const;

 private:
  std::vector<ScalarMeasure> components_;
  SpaceNorm norm_;
  std::vector<MeasurableSet> null_sets_;
};

// x*mu: A -> x*(mu(A)) as a scalar measure.
ScalarMeasure apply_functional(const VectorMeasure& mu, std::span<const double> functional);

// sup over the grid of |x*mu|(A): a guaranteed lower bound of the
// semivariation, nondecreasing under grid refinement.
double semivariation(const VectorMeasure& mu, const MeasurableSet& a, const DirectionGrid& grid);

// sup over dyadic partitions of A (up to `depth` bisections per part) of
// sum ||mu(A_i)||; monotone nondecreasing in depth.
double variation(const VectorMeasure& mu, const MeasurableSet& a, int depth);

// u mu for a d' x d matrix u (row-major rows[r] = row r).
VectorMeasure pushforward_operator(const std::vector<std::vector<double>>& u,
                                   const VectorMeasure& mu);

// sup of |f| over A minus the declared null sets, by dense sampling with
// local refinement near the best candidates.
double ess_sup(const Integrand& f, const MeasurableSet& a, const VectorMeasure& mu);

}  // namespace gm
