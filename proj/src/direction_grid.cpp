#include "gm/direction_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gm {

double vector_norm(std::span<const double> v, SpaceNorm n) {
  switch (n) {
    case SpaceNorm::euclidean: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case SpaceNorm::sup: {
      double s = 0.0;
      for (double x : v) s = std::max(s, std::abs(x));
      return s;
    }
    case SpaceNorm::one: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
  }
  return 0.0;
}

SpaceNorm dual_norm(SpaceNorm n) {
  switch (n) {
    case SpaceNorm::euclidean: return SpaceNorm::euclidean;
    case SpaceNorm::sup: return SpaceNorm::one;
    case SpaceNorm::one: return SpaceNorm::sup;
  }
  return SpaceNorm::euclidean;
}

namespace {

void normalize_dual(std::vector<double>& v, SpaceNorm space) {
  const double n = vector_norm(v, dual_norm(space));
  if (!(n > 0.0)) throw std::invalid_argument("direction grid: zero direction");
  for (double& x : v) x /= n;
}

// splitmix64 for the high-dimensional fallback; fixed seed, reproducible.
std::uint64_t mix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

DirectionGrid DirectionGrid::make(int dim, int count, SpaceNorm space_norm, bool hemisphere) {
  if (dim < 1) throw std::invalid_argument("direction grid: dim must be >= 1");
  DirectionGrid g;
  g.dim_ = dim;
  g.space_norm_ = space_norm;
  g.hemisphere_ = hemisphere;

  std::vector<std::vector<double>> rows;
  const double pi = std::numbers::pi;

  if (dim == 1) {
    rows.push_back({1.0});
    if (!hemisphere) rows.push_back({-1.0});
  } else if (dim == 2) {
    int n = std::max(count, 8);
    n += (4 - n % 4) % 4;  // keep the basis directions exactly on the grid
    const int m = hemisphere ? n / 2 : n;
    for (int k = 0; k < m; ++k) {
      const double th = (hemisphere ? pi : 2.0 * pi) * k / n * (hemisphere ? 2.0 : 1.0);
      std::vector<double> v{std::cos(th), std::sin(th)};
      normalize_dual(v, space_norm);
      rows.push_back(std::move(v));
    }
  } else if (dim == 3) {
    const int n = std::max(count, 32);
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = golden * k;
      std::vector<double> v{r * std::cos(th), r * std::sin(th), z};
      if (hemisphere && z < 0.0) continue;
      normalize_dual(v, space_norm);
      rows.push_back(std::move(v));
    }
  } else {
    std::uint64_t seed = 0x5eed0c0ffeeULL + static_cast<std::uint64_t>(dim);
    const int n = std::max(count, 4 * dim);
    while (static_cast<int>(rows.size()) < n) {
      std::vector<double> v(dim);
      // Box-Muller from two uniform draws; isotropic direction.
      for (int i = 0; i < dim; ++i) {
        const double u1 = (mix(seed) >> 11) * 0x1.0p-53 + 1e-18;
        const double u2 = (mix(seed) >> 11) * 0x1.0p-53;
        v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
      }
      if (hemisphere && v[dim - 1] < 0.0)
        for (double& x : v) x = -x;
      normalize_dual(v, space_norm);
      rows.push_back(std::move(v));
    }
  }

  // Basis directions, then dedupe.
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    rows.push_back(e);
    if (!hemisphere) {
      e[i] = -1.0;
      rows.push_back(e);
    }
  }
  auto close = [dim](const std::vector<double>& a, std::span<const double> b, double s) {
    double d = 0.0;
    for (int i = 0; i < dim; ++i) d = std::max(d, std::abs(a[i] - s * b[i]));
    return d < 1e-9;
  };
  std::vector<double> flat;
  for (const auto& row : rows) {
    bool dup = false;
    for (std::size_t r = 0; r * dim < flat.size(); ++r) {
      std::span<const double> prev{flat.data() + r * dim, static_cast<std::size_t>(dim)};
      if (close(row, prev, 1.0)) dup = true;
    }
    if (!dup) flat.insert(flat.end(), row.begin(), row.end());
  }
  g.dirs_ = std::move(flat);

  // Record whether the grid is closed under u -> -u.
  bool closed = true;
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m && closed; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < m && !found; ++j) {
      std::span<const double> a = g.direction(i);
      std::span<const double> b = g.direction(j);
      double d = 0.0;
      for (int k = 0; k < dim; ++k) d = std::max(d, std::abs(a[k] + b[k]));
      if (d < 1e-9) found = true;
    }
    closed = found;
  }
  g.antipodally_closed_ = closed;
  return g;
}

bool DirectionGrid::same_grid(const DirectionGrid& o) const {
  return dim_ == o.dim_ && space_norm_ == o.space_norm_ && dirs_ == o.dirs_;
}

}  // namespace gm
