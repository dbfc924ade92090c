#include "gm/set_valued.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gm/errors.hpp"
#include "gm/threading.hpp"

namespace gm {

namespace {

void check_dim(std::size_t got, int dim, const char* what) {
  if (static_cast<int>(got) != dim)
    throw std::invalid_argument(std::string("set-valued density: ") + what +
                                " dimension mismatch");
}

// Sampled nonnegativity check for parameter functions that must be >= 0.
void check_nonneg(const PiecewiseFn& f, const char* what) {
  if (f.trivial()) return;
  const double lo = f.domain_lo(), hi = f.domain_hi();
  for (int i = 0; i <= 256; ++i) {
    const double t = lo + (hi - lo) * i / 256.0;
    if (f(t) < -1e-12)
      throw std::invalid_argument(std::string("set-valued density: ") + what +
                                  " must be pointwise >= 0");
  }
}

}  // namespace

SetValuedDensity::SetValuedDensity(int dim, BoxDensity d) : dim_(dim), body_(std::move(d)) {
  const auto& b = std::get<BoxDensity>(body_);
  check_dim(b.center.size(), dim, "box center");
  check_dim(b.radii.size(), dim, "box radii");
  for (const auto& r : b.radii) check_nonneg(r, "box radius");
}

SetValuedDensity::SetValuedDensity(int dim, BallDensity d) : dim_(dim), body_(std::move(d)) {
  const auto& b = std::get<BallDensity>(body_);
  check_dim(b.center.size(), dim, "ball center");
  check_nonneg(b.radius, "ball radius");
}

SetValuedDensity::SetValuedDensity(int dim, ZonotopeDensity d) : dim_(dim), body_(std::move(d)) {
  const auto& z = std::get<ZonotopeDensity>(body_);
  check_dim(z.center.size(), dim, "zonotope center");
  for (const auto& g : z.generators) check_dim(g.size(), dim, "zonotope generator");
}

PiecewiseFn SetValuedDensity::support_profile(std::span<const double> dir) const {
  if (static_cast<int>(dir.size()) != dim_)
    throw std::invalid_argument("support_profile: direction dimension mismatch");
  if (const auto* box = std::get_if<BoxDensity>(&body_)) {
    std::vector<std::pair<double, const PiecewiseFn*>> terms;
    for (int i = 0; i < dim_; ++i) {
      terms.push_back({dir[i], &box->center[i]});
      terms.push_back({std::abs(dir[i]), &box->radii[i]});
    }
    return PiecewiseFn::linear_combination(terms);
  }
  if (const auto* ball = std::get_if<BallDensity>(&body_)) {
    double nrm = 0.0;
    for (double x : dir) nrm += x * x;
    nrm = std::sqrt(nrm);
    std::vector<std::pair<double, const PiecewiseFn*>> terms;
    for (int i = 0; i < dim_; ++i) terms.push_back({dir[i], &ball->center[i]});
    terms.push_back({nrm, &ball->radius});
    return PiecewiseFn::linear_combination(terms);
  }
  const auto& z = std::get<ZonotopeDensity>(body_);
  std::vector<std::pair<double, const PiecewiseFn*>> terms;
  for (int i = 0; i < dim_; ++i) terms.push_back({dir[i], &z.center[i]});
  // |g_j . dir| needs its own sign resolution per generator.
  std::vector<PiecewiseFn> abs_parts;
  abs_parts.reserve(z.generators.size());
  for (const auto& gen : z.generators) {
    std::vector<std::pair<double, const PiecewiseFn*>> dot;
    for (int i = 0; i < dim_; ++i) dot.push_back({dir[i], &gen[i]});
    abs_parts.push_back(PiecewiseFn::linear_combination(dot).absolute());
  }
  for (const auto& p : abs_parts) terms.push_back({1.0, &p});
  return PiecewiseFn::linear_combination(terms);
}

double SetValuedDensity::support_at(std::span<const double> dir, double t) const {
  if (const auto* box = std::get_if<BoxDensity>(&body_)) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
      s += dir[i] * box->center[i](t) + std::abs(dir[i]) * box->radii[i](t);
    return s;
  }
  if (const auto* ball = std::get_if<BallDensity>(&body_)) {
    double s = 0.0, nrm = 0.0;
    for (int i = 0; i < dim_; ++i) {
      s += dir[i] * ball->center[i](t);
      nrm += dir[i] * dir[i];
    }
    return s + std::sqrt(nrm) * ball->radius(t);
  }
  const auto& z = std::get<ZonotopeDensity>(body_);
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += dir[i] * z.center[i](t);
  for (const auto& gen : z.generators) {
    double dot = 0.0;
    for (int i = 0; i < dim_; ++i) dot += dir[i] * gen[i](t);
    s += std::abs(dot);
  }
  return s;
}

std::vector<PiecewiseFn> SetValuedDensity::center_profiles() const {
  if (const auto* box = std::get_if<BoxDensity>(&body_)) return box->center;
  if (const auto* ball = std::get_if<BallDensity>(&body_)) return ball->center;
  return std::get<ZonotopeDensity>(body_).center;
}

std::vector<PiecewiseFn> SetValuedDensity::extremal_profiles(std::span<const double> dir) const {
  if (static_cast<int>(dir.size()) != dim_)
    throw std::invalid_argument("extremal_profiles: direction dimension mismatch");
  auto sign_of = [](double x) { return x < 0 ? -1.0 : (x > 0 ? 1.0 : 0.0); };

  if (const auto* box = std::get_if<BoxDensity>(&body_)) {
    std::vector<PiecewiseFn> out;
    out.reserve(dim_);
    for (int i = 0; i < dim_; ++i) {
      std::vector<std::pair<double, const PiecewiseFn*>> terms{{1.0, &box->center[i]},
                                                               {sign_of(dir[i]), &box->radii[i]}};
      out.push_back(PiecewiseFn::linear_combination(terms));
    }
    return out;
  }
  if (const auto* ball = std::get_if<BallDensity>(&body_)) {
    double nrm = 0.0;
    for (double x : dir) nrm += x * x;
    nrm = std::sqrt(nrm);
    std::vector<PiecewiseFn> out;
    out.reserve(dim_);
    for (int i = 0; i < dim_; ++i) {
      const double coeff = nrm > 0 ? dir[i] / nrm : 0.0;
      std::vector<std::pair<double, const PiecewiseFn*>> terms{{1.0, &ball->center[i]},
                                                               {coeff, &ball->radius}};
      out.push_back(PiecewiseFn::linear_combination(terms));
    }
    return out;
  }
  const auto& z = std::get<ZonotopeDensity>(body_);
  // sign_j(t) = sign(g_j(t) . dir); the extremal point is
  // c(t) + sum_j sign_j(t) g_j(t).
  std::vector<PiecewiseFn> signs;
  signs.reserve(z.generators.size());
  for (const auto& gen : z.generators) {
    std::vector<std::pair<double, const PiecewiseFn*>> dot;
    for (int i = 0; i < dim_; ++i) dot.push_back({dir[i], &gen[i]});
    signs.push_back(PiecewiseFn::linear_combination(dot).sign_piecewise());
  }
  std::vector<PiecewiseFn> out;
  out.reserve(dim_);
  for (int i = 0; i < dim_; ++i) {
    std::vector<PiecewiseFn> owned;
    owned.push_back(z.center[i]);
    for (std::size_t j = 0; j < z.generators.size(); ++j)
      owned.push_back(signs[j].product(z.generators[j][i]));
    std::vector<std::pair<double, const PiecewiseFn*>> terms;
    for (const auto& p : owned) terms.push_back({1.0, &p});
    out.push_back(PiecewiseFn::linear_combination(terms));
  }
  return out;
}

Integrand SetValuedDensity::norm_integrand(const GridPtr& grid) const {
  SetValuedDensity copy = *this;
  GridPtr g = grid;
  Integrand out([copy, g](double t) {
    double best = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      best = std::max(best, std::abs(copy.support_at(g->direction(i), t)));
    return best;
  });
  // Breakpoints from the basis-direction profiles cover parameter kinks.
  std::vector<double> bps;
  for (int i = 0; i < dim_; ++i) {
    std::vector<double> e(dim_, 0.0);
    e[i] = 1.0;
    const PiecewiseFn p = support_profile(e);
    bps.insert(bps.end(), p.breakpoints().begin(), p.breakpoints().end());
  }
  out.with_breakpoints(bps);
  return out;
}

SetValuedMeasure::SetValuedMeasure(SetValuedDensity density, ScalarMeasure base)
    : density_(std::move(density)), base_(std::move(base)) {
  for (const Atom& a : base_.atoms())
    if (a.weight < 0.0)
      throw std::invalid_argument("set-valued measure: base must be nonnegative");
  if (!base_.density().trivial()) {
    const double lo = base_.density().domain_lo(), hi = base_.density().domain_hi();
    for (int i = 0; i <= 256; ++i) {
      const double t = lo + (hi - lo) * i / 256.0;
      if (base_.density()(t) < -1e-12)
        throw std::invalid_argument("set-valued measure: base must be nonnegative");
    }
  }
  if (base_.tail_mass())
    throw std::invalid_argument("set-valued measure: unbounded bases are not supported");
}

ScalarMeasure SetValuedMeasure::scalarized(std::span<const double> dir) const {
  const PiecewiseFn profile = density_.support_profile(dir);
  PiecewiseFn d = profile.product(base_.density());
  std::vector<Atom> atoms;
  atoms.reserve(base_.atoms().size());
  for (const Atom& a : base_.atoms())
    atoms.push_back({a.location, density_.support_at(dir, a.location) * a.weight});
  return ScalarMeasure(std::move(d), std::move(atoms));
}

SupportSet sv_measure_of(const SetValuedMeasure& m, const MeasurableSet& a, const GridPtr& grid,
                         double tol, const HKOptions& opt) {
  std::vector<double> values(grid->size());
  parallel_for_indexed(grid->size(), [&](std::size_t i) {
    const Integrand profile =
        Integrand::from_piecewise(m.density().support_profile(grid->direction(i)));
    values[i] = hk_integrate(profile, a, m.base(), tol, opt).value;
  });
  return SupportSet::from_values(grid, std::move(values));
}

SupportSet sv_kl_henstock_integral(const Integrand& f, const MeasurableSet& a,
                                   const SetValuedMeasure& m, const GridPtr& grid, double tol,
                                   const HKOptions& opt) {
  std::vector<double> values(grid->size());
  parallel_for_indexed(grid->size(), [&](std::size_t i) {
    const ScalarMeasure mu = m.scalarized(grid->direction(i));
    values[i] = hk_integrate(f, a, mu, tol, opt).value;
  });
  SupportSet w = SupportSet::from_values(grid, std::move(values));
  const ConvexityReport report = validate_convexity(w);
  const double threshold = std::max(50.0 * tol, 1e-12 * (1.0 + norm_of_set(w)));
  if (report.worst_violation > threshold)
    throw NotConvexlyIntegrable(
        "candidate support values are not sublinear: no compact convex W_A exists "
        "(typical for sign-changing integrands)",
        report.worst_violation);
  return w;
}

VectorMeasure selection(const SetValuedMeasure& m, const SelectionRule& rule, SpaceNorm norm) {
  std::vector<PiecewiseFn> paths;
  if (std::holds_alternative<SteinerRule>(rule)) {
    paths = m.density().center_profiles();
  } else {
    const auto& ex = std::get<ExtremalRule>(rule);
    paths = m.density().extremal_profiles(ex.direction);
  }
  std::vector<ScalarMeasure> comps;
  comps.reserve(paths.size());
  for (const auto& path : paths) {
    std::vector<Atom> atoms;
    for (const Atom& a : m.base().atoms()) atoms.push_back({a.location, path(a.location) * a.weight});
    comps.push_back(ScalarMeasure(path.product(m.base().density()), std::move(atoms)));
  }
  return VectorMeasure(std::move(comps), norm);
}

double sv_variation(const SetValuedMeasure& m, const MeasurableSet& a, int depth,
                    const GridPtr& grid, double tol) {
  if (depth < 0) throw std::invalid_argument("sv_variation: depth must be >= 0");
  double total = 0.0;
  for (const auto& part : a.parts()) {
    if (part.unbounded()) throw Error("sv_variation over unbounded sets is not supported");
    const int cells = 1 << depth;
    const double w = part.length() / cells;
    for (int i = 0; i < cells; ++i) {
      const double lo = part.lo + i * w;
      const double hi = (i == cells - 1) ? part.hi : part.lo + (i + 1) * w;
      Interval cell(lo, hi, i == 0 ? part.closed_lo : true,
                    i == cells - 1 ? part.closed_hi : false);
      if (cell.empty()) continue;
      total += norm_of_set(sv_measure_of(m, MeasurableSet(cell), grid, tol));
    }
  }
  return total;
}

namespace {
void require_nonneg_integrand(const Integrand& f, const MeasurableSet& a, const char* who) {
  for (const auto& part : a.parts()) {
    if (part.unbounded()) continue;
    for (int i = 0; i <= 128; ++i) {
      const double t = part.lo + (part.hi - part.lo) * i / 128.0;
      if (f.is_exempt(t)) continue;
      if (f(t) < -1e-12)
        throw Error(std::string(who) + " requires a nonnegative integrand");
    }
  }
}
}  // namespace

std::vector<std::pair<MeasurableSet, SupportSet>> sv_indefinite(
    const Integrand& f, const SetValuedMeasure& m, const std::vector<MeasurableSet>& family,
    const GridPtr& grid, double tol) {
  for (const auto& a : family) require_nonneg_integrand(f, a, "sv_indefinite");
  std::vector<std::pair<MeasurableSet, SupportSet>> out;
  out.reserve(family.size());
  for (const auto& a : family)
    out.push_back({a, sv_kl_henstock_integral(f, a, m, grid, tol)});
  return out;
}

double rn_equality_check(const Integrand& f, const SetValuedMeasure& m, const MeasurableSet& a,
                         const GridPtr& grid, double tol) {
  require_nonneg_integrand(f, a, "rn_equality_check");
  const SupportSet via_measure = sv_kl_henstock_integral(f, a, m, grid, tol);

  // Direct route: integrate f(t) sigma(u, Gamma(t)) against the base.
  std::vector<double> direct(grid->size());
  parallel_for_indexed(grid->size(), [&](std::size_t i) {
    const Integrand profile =
        Integrand::from_piecewise(m.density().support_profile(grid->direction(i)));
    direct[i] = hk_integrate(Integrand::product(f, profile), a, m.base(), tol).value;
  });
  const SupportSet via_density = SupportSet::from_values(grid, std::move(direct));
  return hausdorff(via_measure, via_density);
}

}  // namespace gm
