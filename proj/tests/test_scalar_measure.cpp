#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gm/errors.hpp"
#include "gm/scalar_measure.hpp"
#include "oracles.hpp"
#include "testkit.hpp"

using namespace gm;

TEST_CASE("measure_of basics") {
  ScalarMeasure leb = ScalarMeasure::lebesgue(Interval::closed(0, 1));
  CHECK(leb.measure_of(MeasurableSet(Interval::closed(0, 1))) == doctest::Approx(1.0).epsilon(1e-15));

  ScalarMeasure atoms = ScalarMeasure::from_atoms({{0.5, 2.0}});
  CHECK(atoms.measure_of(MeasurableSet(Interval::closed(0, 1))) == 2.0);
  CHECK(atoms.measure_of(MeasurableSet(Interval::open(0.5, 1))) == 0.0);
  CHECK(atoms.measure_of(MeasurableSet(Interval::closed(0.5, 0.5))) == 2.0);

  // rho(t) = 2t on [0,1], A = [0, 1/2] -> t^2 at 1/2 = 0.25, exactly.
  ScalarMeasure m(PiecewiseFn::from_poly(Polynomial({0.0, 2.0}), 0, 1));
  CHECK(m.measure_of(MeasurableSet(Interval::closed(0, 0.5))) == 0.25);
}

TEST_CASE("measure_of is finitely additive") {
  testkit::Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    ScalarMeasure m = testkit::random_density_measure(rng, 0, 1, true);
    MeasurableSet a = testkit::random_set(rng, 0, 1);
    MeasurableSet b = testkit::random_set(rng, 0, 1);
    MeasurableSet ab = set_intersect(a, b);
    MeasurableSet a_minus_b = set_difference(a, b);
    CHECK(m.measure_of(a) ==
          doctest::Approx(m.measure_of(ab) + m.measure_of(a_minus_b)).epsilon(1e-12));
  }
}

TEST_CASE("sigma additivity witnessed on nested unions") {
  testkit::Rng rng(17);
  ScalarMeasure m(testkit::random_piecewise_poly(rng, 0, 1));
  // Union of [1/2^{k+1}, 1/2^k] exhausts (0, 1].
  double partial = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double hi = std::pow(0.5, k);
    const double lo = 0.5 * hi;
    partial += m.measure_of(MeasurableSet(Interval::left_open(lo, hi)));
  }
  CHECK(partial == doctest::Approx(m.measure_of(MeasurableSet(Interval::left_open(0, 1))))
                       .epsilon(1e-9));
}

TEST_CASE("total_variation examples") {
  // rho(t) = t - 1/2 on [0,1]: |m|([0,1]) = 1/4 (two triangles of area 1/8).
  ScalarMeasure m(PiecewiseFn::from_poly(Polynomial({-0.5, 1.0}), 0, 1));
  ScalarMeasure tv = m.total_variation();
  CHECK(tv.measure_of(MeasurableSet(Interval::closed(0, 1))) == doctest::Approx(0.25).epsilon(1e-12));

  // Nonnegative density: |m| = m.
  ScalarMeasure p(PiecewiseFn::from_poly(Polynomial({1.0, 1.0}), 0, 1));
  MeasurableSet probe(Interval::closed(0.25, 0.75));
  CHECK(p.total_variation().measure_of(probe) == doctest::Approx(p.measure_of(probe)).epsilon(1e-14));

  // Single atom of weight -3 -> variation atom weight 3.
  ScalarMeasure a = ScalarMeasure::from_atoms({{0.3, -3.0}});
  CHECK(a.total_variation().measure_of(MeasurableSet(Interval::closed(0, 1))) == 3.0);
}

TEST_CASE("variation dominates the measure") {
  testkit::Rng rng(23);
  for (int it = 0; it < 100; ++it) {
    ScalarMeasure m = testkit::random_density_measure(rng, 0, 1, true);
    ScalarMeasure tv = m.total_variation();
    MeasurableSet a = testkit::random_set(rng, 0, 1);
    CHECK(tv.measure_of(a) + 1e-10 >= std::abs(m.measure_of(a)));
  }
}

TEST_CASE("sign change resolution failure") {
  // ~1600 roots in [0,1]; above the isolation cap.
  SmoothFn wild{[](double t) { return std::sin(5000.0 * t); }, {}};
  ScalarMeasure m(PiecewiseFn({0.0, 1.0}, {wild}));
  CHECK_THROWS_AS((void)m.total_variation(), SignChangeResolutionFailure);
}

TEST_CASE("linear combinations stay exact for polynomial densities") {
  testkit::Rng rng(31);
  for (int it = 0; it < 50; ++it) {
    ScalarMeasure m1 = testkit::random_density_measure(rng, 0, 1);
    ScalarMeasure m2 = testkit::random_density_measure(rng, 0, 1);
    const double c1 = rng.uniform(-2, 2), c2 = rng.uniform(-2, 2);
    ScalarMeasure combo = ScalarMeasure::linear_combination({{c1, &m1}, {c2, &m2}});
    MeasurableSet a = testkit::random_set(rng, 0, 1);
    CHECK(combo.measure_of(a) ==
          doctest::Approx(c1 * m1.measure_of(a) + c2 * m2.measure_of(a)).epsilon(1e-12));
  }
}

TEST_CASE("tail mass semantics") {
  ScalarMeasure leb = ScalarMeasure::lebesgue(Interval(0, kInf, true, true));
  CHECK(leb.measure_of(MeasurableSet(Interval::closed(0, 5))) == doctest::Approx(5.0));
  CHECK(std::isinf(leb.measure_of(MeasurableSet(Interval(0, kInf, true, true)))));

  // Exponential mass: density e^{-t}, declared tail 1 beyond t = 0.
  SmoothFn exp_piece{[](double t) { return std::exp(-t); },
                     [](double t) { return -std::exp(-t); }};
  ScalarMeasure expm(PiecewiseFn({0.0, 1.0}, {exp_piece}, PieceFn(exp_piece)), {},
                     std::exp(-1.0));
  CHECK(expm.measure_of(MeasurableSet(Interval(2, kInf, false, true))) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(expm.measure_of(MeasurableSet(Interval(0, kInf, true, true))) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
