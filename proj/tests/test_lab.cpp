#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/lab.hpp"
#include "testkit.hpp"

using namespace gm;

namespace {
VectorMeasure documented_mu() {
  return VectorMeasure({ScalarMeasure(PiecewiseFn::constant(1.0, 0, 1)),
                        ScalarMeasure(PiecewiseFn::from_poly(Polynomial({0.0, 2.0}), 0, 1))});
}

DctConfig base_dct_config() {
  DctConfig c{documented_mu(),
              family_sin_shrink(),
              Integrand::constant(2.0),
              MeasurableSet(Interval::closed(0, 1)),
              default_set_family(Interval::closed(0, 1), 50, 8, 42),
              default_n_schedule(1024),
              1e-3,
              1e-6,
              64,
              42};
  return c;
}

SetValuedMeasure ball_measure(double radius) {
  BallDensity ball;
  ball.center = {PiecewiseFn::constant(0.0, 0, 1), PiecewiseFn::constant(0.0, 0, 1)};
  ball.radius = PiecewiseFn::constant(radius, 0, 1);
  return SetValuedMeasure(SetValuedDensity(2, std::move(ball)),
                          ScalarMeasure::lebesgue(Interval::closed(0, 1)));
}
}  // namespace

TEST_CASE("verdict rule") {
  CHECK(sustained_pass({1.0, 0.1, 1e-3, 1e-4}, 1e-3));
  CHECK(!sustained_pass({1.0, 0.1, 1e-3, 1e-2}, 1e-3));      // final too big
  CHECK(!sustained_pass({1.0, 0.1, 5e-3, 1e-4}, 1e-3));      // last-half spike
  CHECK(!sustained_pass({}, 1e-3));
}

TEST_CASE("dct documented instance passes at n = 1000") {
  ConvergenceReport r = run_dct(base_dct_config());
  CHECK(r.verdict);
  CHECK(r.discrepancies.back() < 1e-3);
  CHECK(r.moreover.back() < 2e-3);
  // discrepancy scale ~ 2/n + integration slack
  for (std::size_t i = 0; i < r.n_values.size(); ++i)
    CHECK(r.discrepancies[i] <= 2.0 / r.n_values[i] + 2e-3);
}

TEST_CASE("dct constant family passes immediately") {
  DctConfig c = base_dct_config();
  c.family = family_constant(Integrand([](double t) { return t * t; }));
  c.dominating = Integrand::constant(1.0);
  c.n_values = {1, 2, 4};
  ConvergenceReport r = run_dct(c);
  CHECK(r.verdict);
  for (double d : r.discrepancies) CHECK(d <= 2.0 * c.integral_tol);
}

TEST_CASE("dct ramp family") {
  DctConfig c = base_dct_config();
  c.family = family_ramp();
  c.dominating = Integrand::constant(1.0);
  ConvergenceReport r = run_dct(c);
  CHECK(r.verdict);
  // difference supported on [0, 1/n]: discrepancy <= ||mu||([0,1/n]) + slack
  for (std::size_t i = 0; i < r.n_values.size(); ++i) {
    const double n = static_cast<double>(r.n_values[i]);
    CHECK(r.discrepancies[i] <= (1.0 / n + 1.0 / (n * n)) + 2e-3);
  }
}

TEST_CASE("domination violations are rejected before running") {
  DctConfig c = base_dct_config();
  c.family = family_shift_decay(Integrand::constant(5.0));  // |f_n| ~ 5 > g = 2
  CHECK_THROWS_AS((void)run_dct(c), GeneratorViolatesDomination);
}

TEST_CASE("bct: power family passes, alternating fails") {
  DctConfig c = base_dct_config();
  // t^n concentrates its defect at t = 1 with mass ~ sqrt(5)/n against the
  // documented measure; an eighth of it meets the 1e-3 verdict by n = 1024.
  c.mu = VectorMeasure({ScalarMeasure(PiecewiseFn::constant(0.125, 0, 1)),
                        ScalarMeasure(PiecewiseFn::from_poly(Polynomial({0.0, 0.25}), 0, 1))});
  c.family = family_power();
  c.dominating = Integrand::constant(1.0);  // K = 1
  ConvergenceReport r = run_bct(c);
  CHECK(r.theorem_id == "bct");
  CHECK(r.verdict);

  c.family = family_alternating();
  ConvergenceReport bad = run_bct(c);
  CHECK(!bad.verdict);
  CHECK(bad.discrepancies.back() > 0.05);
}

TEST_CASE("vitali-sv documented instance") {
  // Gamma = ball(0, 1/4): the shift by 1/n moves the support values by r/n.
  SvLabConfig c{ball_measure(0.25),
                family_shift_decay(Integrand([](double t) { return t * t; })),
                Integrand::constant(2.0),
                MeasurableSet(Interval::closed(0, 1)),
                default_n_schedule(1024),
                1e-3,
                1e-7,
                64,
                7,
                {{0.1, 0.05}, {0.01, 0.005}}};
  ConvergenceReport r = run_vitali_sv(c);
  CHECK(r.verdict);
  for (std::size_t i = 0; i < r.n_values.size(); ++i)
    CHECK(r.discrepancies[i] <= 0.25 / r.n_values[i] + 3.0 * c.integral_tol + 1e-12);

  c.ui_table.clear();
  CHECK_THROWS_AS((void)run_vitali_sv(c), GeneratorViolatesDomination);
}

TEST_CASE("dct-sv documented instance and precondition") {
  SvLabConfig c{ball_measure(1.0),
                family_ramp_scaled(0.5),
                Integrand::constant(1.0),
                MeasurableSet(Interval::closed(0, 1)),
                default_n_schedule(1024),
                1e-3,
                1e-7,
                64,
                9,
                {}};
  ConvergenceReport r = run_dct_sv(c);
  CHECK(r.verdict);

  c.family = family_shift_decay(Integrand([](double t) { return t - 2.0; }));  // negative
  CHECK_THROWS_AS((void)run_dct_sv(c), GeneratorViolatesDomination);
}

TEST_CASE("report emission") {
  ConvergenceReport r;
  r.theorem_id = "dct";
  r.seed = 42;
  r.tolerance = 1e-3;
  r.verdict = true;

  SUBCASE("empty report is header-only csv") {
    CHECK(report_csv(r) == "theorem_id,seed,n,discrepancy,tolerance,verdict\n");
  }

  r.n_values = {1, 4, 16};
  r.discrepancies = {0.5, 0.125, 0.03125};

  SUBCASE("three rows, deterministic bytes") {
    const std::string expected =
        "theorem_id,seed,n,discrepancy,tolerance,verdict\n"
        "dct,42,1,0.5,0.001,pass\n"
        "dct,42,4,0.125,0.001,pass\n"
        "dct,42,16,0.03125,0.001,pass\n";
    CHECK(report_csv(r) == expected);
    CHECK(report_csv(r) == report_csv(r));
  }

  SUBCASE("json round-trips to an equal report") {
    ConvergenceReport back = report_from_json(report_json(r));
    CHECK(back.theorem_id == r.theorem_id);
    CHECK(back.seed == r.seed);
    CHECK(back.tolerance == r.tolerance);
    CHECK(back.verdict == r.verdict);
    CHECK(back.n_values == r.n_values);
    CHECK(back.discrepancies == r.discrepancies);
  }

  SUBCASE("emit writes byte-identical files for identical input") {
    emit_report(r, ReportFormat::csv, "/tmp/gm_report_a.csv");
    emit_report(r, ReportFormat::csv, "/tmp/gm_report_b.csv");
    std::ifstream a("/tmp/gm_report_a.csv"), b("/tmp/gm_report_b.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
    std::remove("/tmp/gm_report_a.csv");
    std::remove("/tmp/gm_report_b.csv");
  }
}
