#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gm {

enum class SpaceNorm { euclidean, sup, one };

double vector_norm(std::span<const double> v, SpaceNorm n);
SpaceNorm dual_norm(SpaceNorm n);

// Finite sample of the dual unit sphere: the computable stand-in for the
// quantifier "for all x* with ||x*|| <= 1".  Always contains the +basis
// vectors (and -basis when antipodally closed).  Suprema computed over a
// grid are guaranteed lower bounds, converging under refinement.
class DirectionGrid {
 public:
  // dim 1: {+1, -1};  dim 2: equal angles;  dim 3: Fibonacci sphere;
  // higher dims: seeded uniform directions.  `count` is the target size
  // before basis vectors are appended.  Hemisphere grids keep one
  // representative per antipodal pair (required by variation-mode KL).
  static DirectionGrid make(int dim, int count, SpaceNorm space_norm,
                            bool hemisphere = false);

  int dim() const { return dim_; }
  SpaceNorm space_norm() const { return space_norm_; }
  std::size_t size() const { return dirs_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> direction(std::size_t i) const {
    return {dirs_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  bool antipodally_closed() const { return antipodally_closed_; }
  bool hemisphere() const { return hemisphere_; }

  bool same_grid(const DirectionGrid& o) const;

 private:
  int dim_ = 0;
  SpaceNorm space_norm_ = SpaceNorm::euclidean;
  bool antipodally_closed_ = false;
  bool hemisphere_ = false;
  std::vector<double> dirs_;  // row-major, each row unit in the dual norm
};

}  // namespace gm
