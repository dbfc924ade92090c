#include "gm/lab.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gm/errors.hpp"

namespace gm {

bool sustained_pass(const std::vector<double>& discrepancies, double tolerance) {
  if (discrepancies.empty()) return false;
  if (!(discrepancies.back() < tolerance)) return false;
  const std::size_t half = discrepancies.size() / 2;
  double running_max = 0.0;
  for (std::size_t i = half; i < discrepancies.size(); ++i)
    running_max = std::max(running_max, discrepancies[i]);
  return running_max < 2.0 * tolerance;
}

namespace {
// Zeros of sin(nt) on (0, 1): panels aligned with half-waves keep the
// adaptive ladder honest (no aliased plateaus).
std::vector<double> sin_zero_grid(long n) {
  std::vector<double> bps;
  for (long k = 1; k * std::numbers::pi / n < 1.0; ++k)
    bps.push_back(k * std::numbers::pi / n);
  return bps;
}
}  // namespace

SequenceFamily family_sin_shrink() {
  SequenceFamily f;
  f.name = "sin_shrink";
  f.make = [](long n) {
    return Integrand([n](double t) { return t + std::sin(n * t) / n; })
        .with_breakpoints(sin_zero_grid(n));
  };
  f.limit = Integrand([](double t) { return t; });
  f.diff_breakpoints = [](long n) { return sin_zero_grid(n); };
  return f;
}

SequenceFamily family_ramp() {
  SequenceFamily f;
  f.name = "ramp";
  f.make = [](long n) {
    Integrand g([n](double t) { return std::min(n * t, 1.0); });
    g.with_breakpoints({1.0 / n});
    return g;
  };
  f.limit = Integrand::constant(1.0);  // chi_(0,1]; differs only at t = 0
  f.diff_breakpoints = [](long n) { return std::vector<double>{1.0 / n}; };
  return f;
}

SequenceFamily family_constant(Integrand fn) {
  SequenceFamily f;
  f.name = "constant";
  f.make = [fn](long) { return fn; };
  f.limit = fn;
  return f;
}

SequenceFamily family_power() {
  SequenceFamily f;
  f.name = "power";
  f.make = [](long n) {
    return Integrand([n](double t) { return std::pow(t, static_cast<double>(n)); });
  };
  f.limit = Integrand::constant(0.0);  // t^n -> chi_{1} ~ 0 a.e.
  return f;
}

SequenceFamily family_alternating() {
  SequenceFamily f;
  f.name = "alternating";
  f.make = [](long n) { return Integrand::constant(n % 2 == 0 ? 1.0 : -1.0); };
  f.limit = Integrand::constant(0.0);  // deliberately wrong: harness sanity
  return f;
}

SequenceFamily family_shift_decay(Integrand base) {
  SequenceFamily f;
  f.name = "shift_decay";
  f.make = [base](long n) { return Integrand::linear(1.0, base, 1.0 / n, Integrand::constant(1.0)); };
  f.limit = base;
  return f;
}

SequenceFamily family_osc_decay(Integrand base) {
  SequenceFamily f;
  f.name = "osc_decay";
  f.make = [base](long n) {
    Integrand g([base, n](double t) { return base(t) * (1.0 + std::sin(n * t) / (2.0 * n)); });
    g.with_breakpoints(base.breakpoints()).add_breakpoints(sin_zero_grid(n));
    return g;
  };
  f.limit = base;
  f.diff_breakpoints = [base](long n) {
    std::vector<double> bps(base.breakpoints());
    const std::vector<double> zeros = sin_zero_grid(n);
    bps.insert(bps.end(), zeros.begin(), zeros.end());
    return bps;
  };
  return f;
}

SequenceFamily family_ramp_scaled(double c) {
  SequenceFamily f;
  f.name = "ramp_scaled";
  f.make = [c](long n) {
    Integrand g([n, c](double t) { return std::min(n * t, 1.0) * c; });
    g.with_breakpoints({1.0 / n});
    return g;
  };
  f.limit = Integrand::constant(c);
  f.diff_breakpoints = [](long n) { return std::vector<double>{1.0 / n}; };
  return f;
}

namespace {

// splitmix64, matching the documented deterministic generator contract.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

std::vector<MeasurableSet> default_set_family(const Interval& domain, int dyadic_count,
                                              int random_count, std::uint64_t seed) {
  std::vector<MeasurableSet> family;
  for (int depth = 0; static_cast<int>(family.size()) < dyadic_count && depth <= 6; ++depth) {
    const int cells = 1 << depth;
    const double w = domain.length() / cells;
    for (int i = 0; i < cells && static_cast<int>(family.size()) < dyadic_count; ++i) {
      const double lo = domain.lo + i * w;
      const double hi = (i == cells - 1) ? domain.hi : domain.lo + (i + 1) * w;
      family.push_back(MeasurableSet(Interval::closed(lo, hi)));
    }
  }
  Rng rng{seed ^ 0xabcdef1234567890ULL};
  for (int i = 0; i < random_count; ++i) {
    const int parts = 1 + static_cast<int>(rng.next() % 3);
    std::vector<double> pts;
    for (int k = 0; k < 2 * parts; ++k)
      pts.push_back(domain.lo + domain.length() * rng.uniform());
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> ivs;
    for (int k = 0; k + 1 < 2 * parts; k += 2)
      if (pts[k] < pts[k + 1]) ivs.push_back(Interval::closed(pts[k], pts[k + 1]));
    if (ivs.empty()) ivs.push_back(Interval::closed(domain.lo, domain.midpoint()));
    family.push_back(MeasurableSet(ivs));
  }
  return family;
}

std::vector<long> default_n_schedule(long n_max) {
  // Geometric ramp, then a dense tail: the verdict's last-half window must
  // sit in the asymptotic regime.
  std::vector<long> out;
  for (long n = 1; n <= n_max / 4; n *= 4) out.push_back(n);
  for (long frac : {2L, 4L}) {
    const long n = n_max - n_max / (2 * frac);
    if (n > out.back()) out.push_back(n);
  }
  if (n_max > out.back()) out.push_back(n_max);
  return out;
}

namespace {

void check_domination(const SequenceFamily& family, const Integrand& g,
                      const MeasurableSet& domain, const MeasurableSet& nulls,
                      const std::vector<long>& n_values) {
  const MeasurableSet probe_set = set_difference(domain, nulls);
  for (long n : n_values) {
    const Integrand fn = family.make(n);
    for (const auto& part : probe_set.parts()) {
      if (part.unbounded()) continue;
      for (int i = 0; i <= 257; ++i) {
        const double t = part.lo + part.length() * i / 257.0;
        if (!part.contains(t)) continue;
        if (std::abs(fn(t)) > std::abs(g(t)) + 1e-9)
          throw GeneratorViolatesDomination("'" + family.name + "' is not dominated at t = " +
                                            std::to_string(t) + " for n = " + std::to_string(n));
      }
    }
  }
}

ConvergenceReport run_dct_impl(const DctConfig& config, const char* theorem_id) {
  const auto start = std::chrono::steady_clock::now();
  check_domination(config.family, config.dominating, config.domain, config.mu.null_union(),
                   config.n_values);

  ConvergenceReport report;
  report.theorem_id = theorem_id;
  report.seed = config.seed;
  report.tolerance = config.tolerance;
  report.n_values = config.n_values;

  const DirectionGrid grid =
      DirectionGrid::make(config.mu.dim(), config.grid_count, config.mu.space_norm());
  const double tol = config.integral_tol;

  // Cache the limit integrals and the per-direction variation measures.
  std::vector<KLResult> limit_results;
  limit_results.reserve(config.set_family.size());
  for (const auto& e : config.set_family)
    limit_results.push_back(kl_henstock_integral(config.family.limit, e, config.mu, grid, tol));
  std::vector<ScalarMeasure> tv_measures;
  tv_measures.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    tv_measures.push_back(apply_functional(config.mu, grid.direction(i)).total_variation());

  for (long n : config.n_values) {
    const Integrand fn = config.family.make(n);
    double disc = 0.0;
    for (std::size_t e = 0; e < config.set_family.size(); ++e) {
      KLResult r = kl_henstock_integral(fn, config.set_family[e], config.mu, grid, tol);
      std::vector<double> diff(r.value.size());
      for (std::size_t k = 0; k < diff.size(); ++k)
        diff[k] = r.value[k] - limit_results[e].value[k];
      disc = std::max(disc, vector_norm(diff, config.mu.space_norm()));
    }
    report.discrepancies.push_back(disc);

    Integrand abs_diff = Integrand::abs_difference(fn, config.family.limit);
    if (config.family.diff_breakpoints)
      abs_diff.add_breakpoints(config.family.diff_breakpoints(n));
    double more = 0.0;
    for (const auto& tv : tv_measures)
      more = std::max(more, std::abs(hk_integrate(abs_diff, config.domain, tv, tol).value));
    report.moreover.push_back(more);
  }

  report.verdict = sustained_pass(report.discrepancies, report.tolerance);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ConvergenceReport run_dct(const DctConfig& config) { return run_dct_impl(config, "dct"); }

ConvergenceReport run_bct(const DctConfig& config) {
  // BCT is DCT with a constant dominating function.
  return run_dct_impl(config, "bct");
}

namespace {

ConvergenceReport run_sv_impl(const SvLabConfig& config, const char* theorem_id, bool vitali) {
  const auto start = std::chrono::steady_clock::now();
  const GridPtr grid = std::make_shared<DirectionGrid>(
      DirectionGrid::make(config.m.dim(), config.grid_count, SpaceNorm::euclidean));
  const double tol = config.integral_tol;

  if (vitali) {
    // Sampled uniform-integrability certificate: on small random sets with
    // |M| below delta, the |M|-integral of |f_n| must stay below epsilon.
    if (config.ui_table.empty())
      throw GeneratorViolatesDomination("vitali-sv requires a certified (epsilon, delta) table");
    Rng rng{config.seed ^ 0x517a11ULL};
    const Integrand norm_fn = config.m.density().norm_integrand(grid);
    const Interval hull = config.domain.hull();
    for (const auto& [eps, delta] : config.ui_table) {
      for (int probe = 0; probe < 4; ++probe) {
        const double width = std::min(delta / 4.0, hull.length());
        const double lo = hull.lo + (hull.length() - width) * rng.uniform();
        MeasurableSet small(Interval::closed(lo, lo + width));
        if (sv_variation(config.m, small, 2, grid, tol) >= delta) continue;
        for (long n : {config.n_values.front(), config.n_values.back()}) {
          const Integrand fn = config.family.make(n);
          const Integrand weighted = Integrand::product(Integrand::absolute(fn), norm_fn);
          const double mass = hk_integrate(weighted, small, config.m.base(), tol).value;
          if (mass > eps + 10.0 * tol)
            throw GeneratorViolatesDomination(
                "'" + config.family.name + "' fails its uniform-integrability certificate");
        }
      }
    }
  } else {
    // Domination and nonnegativity, sampled.
    for (long n : config.n_values) {
      const Integrand fn = config.family.make(n);
      for (const auto& part : config.domain.parts()) {
        for (int i = 0; i <= 257; ++i) {
          const double t = part.lo + part.length() * i / 257.0;
          if (!part.contains(t)) continue;
          if (fn(t) < -1e-9)
            throw GeneratorViolatesDomination("'" + config.family.name +
                                              "' must be nonnegative for the set-valued DCT");
          if (std::abs(fn(t)) > std::abs(config.dominating(t)) + 1e-9)
            throw GeneratorViolatesDomination("'" + config.family.name + "' is not dominated");
        }
      }
    }
  }

  ConvergenceReport report;
  report.theorem_id = theorem_id;
  report.seed = config.seed;
  report.tolerance = config.tolerance;
  report.n_values = config.n_values;

  const SupportSet limit_w =
      sv_kl_henstock_integral(config.family.limit, config.domain, config.m, grid, tol);
  for (long n : config.n_values) {
    const Integrand fn = config.family.make(n);
    const SupportSet w = sv_kl_henstock_integral(fn, config.domain, config.m, grid, tol);
    report.discrepancies.push_back(hausdorff(w, limit_w));
  }

  report.verdict = sustained_pass(report.discrepancies, report.tolerance);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ConvergenceReport run_vitali_sv(const SvLabConfig& config) {
  return run_sv_impl(config, "vitali-sv", true);
}

ConvergenceReport run_dct_sv(const SvLabConfig& config) {
  return run_sv_impl(config, "dct-sv", false);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

std::string report_csv(const ConvergenceReport& report) {
  std::string out = "theorem_id,seed,n,discrepancy,tolerance,verdict\n";
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    out += report.theorem_id;
    out += ',';
    out += std::to_string(report.seed);
    out += ',';
    out += std::to_string(report.n_values[i]);
    out += ',';
    out += format_double(report.discrepancies[i]);
    out += ',';
    out += format_double(report.tolerance);
    out += ',';
    out += report.verdict ? "pass" : "fail";
    out += '\n';
  }
  return out;
}

std::string report_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["theorem_id"] = report.theorem_id;
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["verdict"] = report.verdict ? "pass" : "fail";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    nlohmann::ordered_json row;
    row["n"] = report.n_values[i];
    row["discrepancy"] = report.discrepancies[i];
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

ConvergenceReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ConvergenceReport report;
  report.theorem_id = j.at("theorem_id").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.tolerance = j.at("tolerance").get<double>();
  report.verdict = j.at("verdict").get<std::string>() == "pass";
  for (const auto& row : j.at("rows")) {
    report.n_values.push_back(row.at("n").get<long>());
    report.discrepancies.push_back(row.at("discrepancy").get<double>());
  }
  return report;
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open report file for writing: " + path);
  out << (format == ReportFormat::csv ? report_csv(report) : report_json(report));
  if (!out) throw Error("failed writing report file: " + path);
}

}  // namespace gm
