#pragma once

#include <optional>
#include <vector>

#include "gm/interval.hpp"
#include "gm/piecewise.hpp"

namespace gm {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

// Signed scalar measure: piecewise-smooth density plus point atoms plus a
// declared mass for the tail (last breakpoint, +inf].  Exact on measurable
// sets whenever the density pieces carry exact antiderivatives.
class ScalarMeasure {
 public:
  ScalarMeasure() = default;  // zero measure
  explicit ScalarMeasure(PiecewiseFn density, std::vector<Atom> atoms = {},
                         std::optional<double> tail_mass = std::nullopt);

  static ScalarMeasure lebesgue(const Interval& domain);
  static ScalarMeasure from_atoms(std::vector<Atom> atoms);

  double measure_of(const Interval& iv) const;
  double measure_of(const MeasurableSet& a) const;
  double operator()(const MeasurableSet& a) const { return measure_of(a); }

  // |m|: density |rho| (split at sign changes), |atom weights|, |tail|.
  ScalarMeasure total_variation() const;

  const PiecewiseFn& density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::optional<double> tail_mass() const { return tail_mass_; }

  // Density-only mass of [l, r] (closures and atoms ignored); finite l, r.
  double density_mass(double l, double r) const { return density_.integrate(l, r); }
  // Masses of the n uniform subcells of [l, r]; density only.  out must
  // hold n values.
  void segment_masses(double l, double r, int n, double* out) const;
  double atom_mass_in(const Interval& iv) const;

  static ScalarMeasure linear_combination(
      const std::vector<std::pair<double, const ScalarMeasure*>>& terms);

 private:
  PiecewiseFn density_;
  std::vector<Atom> atoms_;  // sorted by location, distinct
  std::optional<double> tail_mass_;
};

}  // namespace gm
