#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gm/integrand.hpp"
#include "gm/kl.hpp"
#include "gm/set_valued.hpp"
#include "gm/vector_measure.hpp"

namespace gm {

// One harness run: discrepancies per n against the finite set family, plus
// the verdict.  Passing needs the final discrepancy below tolerance and the
// running max over the last half below twice the tolerance (sustained
// smallness, not a lucky n).
struct ConvergenceReport {
  std::string theorem_id;
  std::uint64_t seed = 0;
  std::vector<long> n_values;
  std::vector<double> discrepancies;
  std::vector<double> moreover;  // DCT/BCT: sup_grid int |f_n - f| d|x*mu|
  double tolerance = 0.0;
  bool verdict = false;
  double runtime_seconds = 0.0;  // informational; never emitted
};

bool sustained_pass(const std::vector<double>& discrepancies, double tolerance);

// A sequence f_n -> f.  `diff_breakpoints(n)` lists the kinks of |f_n - f|
// so the integrator can align panels with them.
struct SequenceFamily {
  std::string name;
  std::function<Integrand(long)> make;
  Integrand limit;
  std::function<std::vector<double>(long)> diff_breakpoints;  // may be empty
};

SequenceFamily family_sin_shrink();               // t + sin(nt)/n -> t
SequenceFamily family_ramp();                     // min(nt, 1) -> 1 a.e.
SequenceFamily family_constant(Integrand f);      // f_n = f
SequenceFamily family_power();                    // t^n -> 0 a.e. on [0,1]
SequenceFamily family_alternating();              // (-1)^n with claimed limit 0
SequenceFamily family_shift_decay(Integrand f);   // f + 1/n -> f
SequenceFamily family_osc_decay(Integrand f);     // f (1 + sin(nt)/(2n)) -> f
SequenceFamily family_ramp_scaled(double c);      // min(nt, 1) c -> c a.e.

// Finite surrogate for "uniform in E": dyadic intervals plus seeded random
// interval unions.
std::vector<MeasurableSet> default_set_family(const Interval& domain, int dyadic_count,
                                              int random_count, std::uint64_t seed);

std::vector<long> default_n_schedule(long n_max);

struct DctConfig {
  VectorMeasure mu;
  SequenceFamily family;
  Integrand dominating;  // g (BCT: the constant K)
  MeasurableSet domain;
  std::vector<MeasurableSet> set_family;
  std::vector<long> n_values;
  double tolerance = 1e-3;
  double integral_tol = 1e-6;
  int grid_count = 64;
  std::uint64_t seed = 0;
};

// Thm 3.6-style check: per n, sup_E ||(HKL) int_E f_n - (HKL) int_E f|| and
// the paper's closing quantity sup_grid int_T |f_n - f| d|x*mu|.
// Domination |f_n| <= |g| off the declared null sets is pre-checked on
// samples; violations raise GeneratorViolatesDomination.
ConvergenceReport run_dct(const DctConfig& config);
// Same with g == K constant.
ConvergenceReport run_bct(const DctConfig& config);

struct SvLabConfig {
  SetValuedMeasure m;
  SequenceFamily family;
  Integrand dominating;  // dct-sv only
  MeasurableSet domain;
  std::vector<long> n_values;
  double tolerance = 1e-3;
  double integral_tol = 1e-6;
  int grid_count = 64;
  std::uint64_t seed = 0;
  // Vitali: claimed uniform-integrability table (epsilon, delta), checked on
  // sampled small sets.
  std::vector<std::pair<double, double>> ui_table;
};

ConvergenceReport run_vitali_sv(const SvLabConfig& config);
ConvergenceReport run_dct_sv(const SvLabConfig& config);

enum class ReportFormat { csv, json };

std::string report_csv(const ConvergenceReport& report);
std::string report_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const std::string& text);

// Writes the report; stable column order theorem_id, seed, n, discrepancy,
// tolerance, verdict.  Byte-deterministic for fixed inputs.
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);

}  // namespace gm
