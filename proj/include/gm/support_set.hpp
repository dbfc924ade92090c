#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gm/direction_grid.hpp"

namespace gm {

// Closed-form generators for compact convex sets.
struct BoxGenerator {
  std::vector<double> center;
  std::vector<double> radii;  // half-widths, >= 0
};
struct BallGenerator {
  std::vector<double> center;
  double radius = 0.0;  // euclidean ball
};
struct ZonotopeGenerator {
  std::vector<double> center;
  std::vector<std::vector<double>> generators;
};
using SetGenerator = std::variant<BoxGenerator, BallGenerator, ZonotopeGenerator>;

// sigma(u, K) for the generator's set: box -> c.u + sum r_i |u_i|;
// ball -> c.u + r ||u||_2; zonotope -> c.u + sum_j |g_j . u|.
double support_value(const SetGenerator& g, std::span<const double> dir);

using GridPtr = std::shared_ptr<const DirectionGrid>;

// A compact convex set represented by its support values on a direction
// grid.  When built from a generator the closed form is kept for oracle
// cross-checks.
class SupportSet {
 public:
  SupportSet() = default;
  static SupportSet from_generator(GridPtr grid, SetGenerator g);
  static SupportSet from_values(GridPtr grid, std::vector<double> values);
  static SupportSet origin(GridPtr grid);  // {0}

  const DirectionGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<SetGenerator>& generator() const { return generator_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::optional<SetGenerator> generator_;
};

SupportSet minkowski_sum(const SupportSet& a, const SupportSet& b);  // GridMismatch
SupportSet scale(double lambda, const SupportSet& a);                // NegativeScalar if < 0

// max over the grid of |h_A - h_B|: a lower bound of the Hausdorff metric,
// nondecreasing under grid refinement.  Callers are responsible for the
// validate_convexity precondition.
double hausdorff(const SupportSet& a, const SupportSet& b);

// H(A, {0}) = max |h_A| over the grid.
double norm_of_set(const SupportSet& a);

struct ConvexityReport {
  bool ok = true;
  double worst_violation = 0.0;
  std::size_t at_direction = 0;
};

// Sublinearity spot-check of candidate support values: for each direction g
// decomposable as alpha u_i + beta u_j (alpha, beta >= 0) over nearby grid
// directions, h(g) must not exceed alpha h(u_i) + beta h(u_j) beyond the
// out-of-plane slack.  Exact on 2D equal-angle grids.
ConvexityReport validate_convexity(const SupportSet& s);

}  // namespace gm
