#include "gm/kl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gm/errors.hpp"
#include "gm/threading.hpp"

namespace gm {

namespace {

// Least squares for the small dense system G x = v (rows = grid directions):
// normal equations with partial-pivot Gaussian elimination.
std::vector<double> least_squares(const DirectionGrid& grid, const std::vector<double>& v) {
  const int d = grid.dim();
  std::vector<double> gtg(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> gtv(d, 0.0);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::span<const double> u = grid.direction(r);
    for (int i = 0; i < d; ++i) {
      gtv[i] += u[i] * v[r];
      for (int j = 0; j < d; ++j) gtg[static_cast<std::size_t>(i) * d + j] += u[i] * u[j];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  auto at = [&](int i, int j) -> double& { return gtg[static_cast<std::size_t>(i) * d + j]; };
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (pivot != col) {
      for (int j = 0; j < d; ++j) std::swap(at(col, j), at(pivot, j));
      std::swap(gtv[col], gtv[pivot]);
    }
    const double diag = at(col, col);
    if (std::abs(diag) < 1e-14)
      throw Error("direction grid does not span the space (singular normal equations)");
    for (int r = col + 1; r < d; ++r) {
      const double factor = at(r, col) / diag;
      for (int j = col; j < d; ++j) at(r, j) -= factor * at(col, j);
      gtv[r] -= factor * gtv[col];
    }
  }
  std::vector<double> x(d);
  for (int i = d - 1; i >= 0; --i) {
    double s = gtv[i];
    for (int j = i + 1; j < d; ++j) s -= at(i, j) * x[j];
    x[i] = s / at(i, i);
  }
  return x;
}

}  // namespace

KLResult kl_henstock_integral(const Integrand& f, const MeasurableSet& a,
                              const VectorMeasure& mu, const DirectionGrid& grid, double tol,
                              KLMode mode, const HKOptions& opt) {
  if (grid.dim() != mu.dim()) throw std::invalid_argument("grid dimension mismatch");
  if (tol <= 0.0) throw std::invalid_argument("kl: tol must be positive");
  if (mode == KLMode::variation && grid.antipodally_closed())
    throw NotHKLIntegrable(
        "variation mode on an antipodally closed grid is degenerate: v(x*) is even in x* "
        "while x*(x_A) is odd, so only x_A = 0 could satisfy the defining identity; use a "
        "hemisphere grid",
        kInf, /*degeneracy=*/true);

  std::vector<double> v(grid.size());
  parallel_for_indexed(grid.size(), [&](std::size_t i) {
    ScalarMeasure m = apply_functional(mu, grid.direction(i));
    if (mode == KLMode::variation) m = m.total_variation();
    v[i] = hk_integrate(f, a, m, tol, opt).value;
  });

  KLResult out;
  out.mode = mode;
  out.value = least_squares(grid, v);
  double residual = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::span<const double> u = grid.direction(i);
    double dot = 0.0;
    for (int k = 0; k < grid.dim(); ++k) dot += u[k] * out.value[k];
    residual = std::max(residual, std::abs(dot - v[i]));
  }
  out.residual = residual;
  if (residual > 100.0 * tol)
    throw NotHKLIntegrable("no x_A satisfies x*(x_A) = v(x*) over the grid to tolerance",
                           residual);
  return out;
}

std::vector<std::pair<MeasurableSet, KLResult>> indefinite_integral(
    const Integrand& f, const VectorMeasure& mu, const std::vector<MeasurableSet>& family,
    const DirectionGrid& grid, double tol, KLMode mode) {
  std::vector<std::pair<MeasurableSet, KLResult>> out;
  out.reserve(family.size());
  for (const auto& a : family)
    out.push_back({a, kl_henstock_integral(f, a, mu, grid, tol, mode)});
  return out;
}

double alexiewicz_norm(const Integrand& f, const VectorMeasure& mu, const DirectionGrid& grid,
                       const std::vector<MeasurableSet>& family, double tol) {
  if (family.empty()) return 0.0;
  std::vector<double> per_dir(grid.size());
  parallel_for_indexed(grid.size(), [&](std::size_t i) {
    const ScalarMeasure tv = apply_functional(mu, grid.direction(i)).total_variation();
    double best = 0.0;
    for (const auto& a : family) best = std::max(best, std::abs(hk_integrate(f, a, tv, tol).value));
    per_dir[i] = best;
  });
  double best = 0.0;
  for (double x : per_dir) best = std::max(best, x);
  return best;
}

std::vector<MeasurableSet> dyadic_subintervals(const Interval& domain, int max_depth) {
  std::vector<MeasurableSet> out;
  for (int depth = 0; depth <= max_depth; ++depth) {
    const int cells = 1 << depth;
    const double w = domain.length() / cells;
    for (int i = 0; i < cells; ++i) {
      const double lo = domain.lo + i * w;
      const double hi = (i == cells - 1) ? domain.hi : domain.lo + (i + 1) * w;
      out.push_back(MeasurableSet(Interval::closed(lo, hi)));
    }
  }
  return out;
}

}  // namespace gm
