#include "gm/support_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gm/errors.hpp"
#include "gm/interval.hpp"

namespace gm {

double support_value(const SetGenerator& g, std::span<const double> dir) {
  if (const auto* box = std::get_if<BoxGenerator>(&g)) {
    double s = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i)
      s += box->center[i] * dir[i] + box->radii[i] * std::abs(dir[i]);
    return s;
  }
  if (const auto* ball = std::get_if<BallGenerator>(&g)) {
    double dot = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i) {
      dot += ball->center[i] * dir[i];
      nrm += dir[i] * dir[i];
    }
    return dot + ball->radius * std::sqrt(nrm);
  }
  const auto& z = std::get<ZonotopeGenerator>(g);
  double s = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) s += z.center[i] * dir[i];
  for (const auto& gen : z.generators) {
    double dot = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i) dot += gen[i] * dir[i];
    s += std::abs(dot);
  }
  return s;
}

namespace {
void check_generator(const SetGenerator& g, int dim) {
  if (const auto* box = std::get_if<BoxGenerator>(&g)) {
    if (static_cast<int>(box->center.size()) != dim ||
        static_cast<int>(box->radii.size()) != dim)
      throw std::invalid_argument("box generator dimension mismatch");
    for (double r : box->radii)
      if (r < 0.0) throw std::invalid_argument("box radii must be >= 0");
  } else if (const auto* ball = std::get_if<BallGenerator>(&g)) {
    if (static_cast<int>(ball->center.size()) != dim)
      throw std::invalid_argument("ball generator dimension mismatch");
    if (ball->radius < 0.0) throw std::invalid_argument("ball radius must be >= 0");
  } else {
    const auto& z = std::get<ZonotopeGenerator>(g);
    if (static_cast<int>(z.center.size()) != dim)
      throw std::invalid_argument("zonotope generator dimension mismatch");
    for (const auto& gen : z.generators)
      if (static_cast<int>(gen.size()) != dim)
        throw std::invalid_argument("zonotope generator dimension mismatch");
  }
}
}  // namespace

SupportSet SupportSet::from_generator(GridPtr grid, SetGenerator g) {
  if (!grid) throw std::invalid_argument("support set needs a grid");
  check_generator(g, grid->dim());
  SupportSet s;
  s.grid_ = std::move(grid);
  s.values_.resize(s.grid_->size());
  for (std::size_t i = 0; i < s.grid_->size(); ++i)
    s.values_[i] = support_value(g, s.grid_->direction(i));
  s.generator_ = std::move(g);
  return s;
}

SupportSet SupportSet::from_values(GridPtr grid, std::vector<double> values) {
  if (!grid) throw std::invalid_argument("support set needs a grid");
  if (values.size() != grid->size())
    throw std::invalid_argument("support values/grid size mismatch");
  SupportSet s;
  s.grid_ = std::move(grid);
  s.values_ = std::move(values);
  return s;
}

SupportSet SupportSet::origin(GridPtr grid) {
  const std::size_t n = grid ? grid->size() : 0;
  return from_values(std::move(grid), std::vector<double>(n, 0.0));
}

namespace {
void require_same_grid(const SupportSet& a, const SupportSet& b) {
  if (a.grid_ptr() == b.grid_ptr()) return;
  if (!a.grid_ptr() || !b.grid_ptr() || !a.grid().same_grid(b.grid()))
    throw GridMismatch("support sets live on different direction grids");
}
}  // namespace

SupportSet minkowski_sum(const SupportSet& a, const SupportSet& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.values());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values()[i];
  SupportSet out = SupportSet::from_values(a.grid_ptr(), std::move(v));
  return out;
}

SupportSet scale(double lambda, const SupportSet& a) {
  if (lambda < 0.0)
    throw NegativeScalar("scale: the support identity sigma(u, lambda A) = lambda sigma(u, A) "
                         "holds only for lambda >= 0");
  std::vector<double> v(a.values());
  for (double& x : v) x *= lambda;
  return SupportSet::from_values(a.grid_ptr(), std::move(v));
}

double hausdorff(const SupportSet& a, const SupportSet& b) {
  require_same_grid(a, b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    best = std::max(best, std::abs(a.values()[i] - b.values()[i]));
  return best;
}

double norm_of_set(const SupportSet& a) {
  double best = 0.0;
  for (double v : a.values()) best = std::max(best, std::abs(v));
  return best;
}

ConvexityReport validate_convexity(const SupportSet& s) {
  const DirectionGrid& grid = s.grid();
  const int d = grid.dim();
  const std::size_t n = grid.size();
  ConvexityReport report;
  if (n < static_cast<std::size_t>(3 * d)) return report;

  double scale_h = 0.0;
  for (double v : s.values()) scale_h = std::max(scale_h, std::abs(v));
  const double tiny = 1e-9 * (1.0 + scale_h);

  // For each direction g, find the two nearest distinct neighbors and try
  // the in-span decomposition g = alpha u_i + beta u_j + g_perp.
  for (std::size_t k = 0; k < n; ++k) {
    std::span<const double> g = grid.direction(k);
    // two nearest neighbors by euclidean angle
    std::size_t best_i = n, best_j = n;
    double di = kInf;
    double dj = kInf;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == k) continue;
      double dist = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = grid.direction(m)[c] - g[c];
        dist += diff * diff;
      }
      if (dist < di) {
        dj = di;
        best_j = best_i;
        di = dist;
        best_i = m;
      } else if (dist < dj) {
        dj = dist;
        best_j = m;
      }
    }
    if (best_i >= n || best_j >= n) continue;
    std::span<const double> u = grid.direction(best_i);
    std::span<const double> v = grid.direction(best_j);

    // Solve min ||g - alpha u - beta v|| via 2x2 normal equations.
    double uu = 0, uv = 0, vv = 0, gu = 0, gv = 0;
    for (int c = 0; c < d; ++c) {
      uu += u[c] * u[c];
      uv += u[c] * v[c];
      vv += v[c] * v[c];
      gu += g[c] * u[c];
      gv += g[c] * v[c];
    }
    const double det = uu * vv - uv * uv;
    if (std::abs(det) < 1e-12) continue;  // colinear neighbors
    const double alpha = (gu * vv - gv * uv) / det;
    const double beta = (gv * uu - gu * uv) / det;
    if (alpha < -1e-12 || beta < -1e-12) continue;  // not a conic combination

    double perp = 0.0;
    for (int c = 0; c < d; ++c) {
      const double r = g[c] - alpha * u[c] - beta * v[c];
      perp += r * r;
    }
    perp = std::sqrt(perp);

    const double bound =
        alpha * s.values()[best_i] + beta * s.values()[best_j] + perp * scale_h + tiny;
    const double violation = s.values()[k] - bound;
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.at_direction = k;
      report.ok = false;
    }
  }
  return report;
}

}  // namespace gm
