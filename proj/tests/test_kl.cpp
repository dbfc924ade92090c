#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gm/errors.hpp"
#include "gm/kl.hpp"
#include "testkit.hpp"

using namespace gm;

namespace {
const MeasurableSet kUnit(Interval::closed(0, 1));

DirectionGrid grid2() { return DirectionGrid::make(2, 64, SpaceNorm::euclidean); }

VectorMeasure documented_mu() {
  // density rho(t) = (1, 2t) on [0,1]
  return VectorMeasure({ScalarMeasure(PiecewiseFn::constant(1.0, 0, 1)),
                        ScalarMeasure(PiecewiseFn::from_poly(Polynomial({0.0, 2.0}), 0, 1))});
}
}  // namespace

TEST_CASE("documented example: f(t)=t against (1, 2t)") {
  Integrand f([](double t) { return t; });
  DirectionGrid grid = grid2();
  KLResult r = kl_henstock_integral(f, kUnit, documented_mu(), grid, 1e-9);
  CHECK(std::abs(r.value[0] - 0.5) <= 1e-8);
  CHECK(std::abs(r.value[1] - 2.0 / 3.0) <= 1e-8);
  CHECK(r.residual <= 1e-8);
}

TEST_CASE("zero integrand gives zero vector with zero residual") {
  DirectionGrid grid = grid2();
  KLResult r = kl_henstock_integral(Integrand::constant(0.0), kUnit, documented_mu(), grid, 1e-9);
  CHECK(r.value[0] == 0.0);
  CHECK(r.value[1] == 0.0);
  CHECK(r.residual == 0.0);
}

TEST_CASE("simple functions assemble exactly") {
  testkit::Rng rng(404);
  DirectionGrid grid = grid2();
  for (int it = 0; it < 10; ++it) {
    auto s = testkit::random_simple_function(rng, 0, 1);
    VectorMeasure mu({testkit::random_density_measure(rng, 0, 1, true),
                      testkit::random_density_measure(rng, 0, 1, true)});
    KLResult r = kl_henstock_integral(s.integrand, kUnit, mu, grid, 1e-10);
    double expected[2] = {0.0, 0.0};
    for (std::size_t k = 0; k < s.sets.size(); ++k) {
      MeasurableSet cap = set_intersect(s.sets[k], kUnit);
      expected[0] += s.coefficients[k] * mu.components()[0].measure_of(cap);
      expected[1] += s.coefficients[k] * mu.components()[1].measure_of(cap);
    }
    CHECK(std::abs(r.value[0] - expected[0]) <= 1e-12);
    CHECK(std::abs(r.value[1] - expected[1]) <= 1e-12);
  }
}

TEST_CASE("variation mode: antipodal grid raises the degeneracy") {
  Integrand f([](double t) { return t; });
  DirectionGrid grid = grid2();
  REQUIRE(grid.antipodally_closed());
  try {
    (void)kl_henstock_integral(f, kUnit, documented_mu(), grid, 1e-8, KLMode::variation);
    FAIL("expected NotHKLIntegrable");
  } catch (const NotHKLIntegrable& e) {
    CHECK(e.antipodal_degeneracy);
  }
}

TEST_CASE("variation mode on a hemisphere grid reports non-integrability") {
  // v(u) = |u . mu|([0,1]) is not linear in u, so no x_A can match it.
  Integrand one = Integrand::constant(1.0);
  auto hemi = DirectionGrid::make(2, 64, SpaceNorm::euclidean, true);
  try {
    (void)kl_henstock_integral(one, kUnit, documented_mu(), hemi, 1e-8, KLMode::variation);
    FAIL("expected NotHKLIntegrable");
  } catch (const NotHKLIntegrable& e) {
    CHECK(!e.antipodal_degeneracy);
    CHECK(e.residual > 1e-6);
  }
}

TEST_CASE("indefinite integral is additive and vanishes at the empty set") {
  Integrand f([](double t) { return t * t; });
  VectorMeasure mu = documented_mu();
  DirectionGrid grid = grid2();
  const double tol = 1e-9;

  MeasurableSet a(Interval::right_open(0, 0.5));
  MeasurableSet b(Interval::closed(0.5, 1));
  KLResult ra = kl_henstock_integral(f, a, mu, grid, tol);
  KLResult rb = kl_henstock_integral(f, b, mu, grid, tol);
  KLResult rab = kl_henstock_integral(f, set_union(a, b), mu, grid, tol);
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(rab.value[k] - ra.value[k] - rb.value[k]) <= 3.0 * tol);

  auto results = indefinite_integral(f, mu, {MeasurableSet()}, grid, tol);
  CHECK(results[0].second.value == std::vector<double>{0.0, 0.0});

  // ||nu([0,1/n])|| decreasing below 1e-3 by n = 1000.
  double prev = kInf;
  for (long n : {1L, 10L, 100L, 1000L}) {
    KLResult r = kl_henstock_integral(f, MeasurableSet(Interval::closed(0, 1.0 / n)), mu, grid, tol);
    const double nrm = vector_norm(r.value, SpaceNorm::euclidean);
    CHECK(nrm <= prev + tol);
    prev = nrm;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("alexiewicz norm") {
  DirectionGrid g1 = DirectionGrid::make(1, 2, SpaceNorm::euclidean);
  VectorMeasure leb({ScalarMeasure::lebesgue(Interval::closed(0, 1))});
  auto family = dyadic_subintervals(Interval::closed(0, 1), 8);

  CHECK(alexiewicz_norm(Integrand::constant(0.0), leb, g1, family, 1e-9) == 0.0);
  CHECK(alexiewicz_norm(Integrand::constant(1.0), leb, g1, family, 1e-9) ==
        doctest::Approx(1.0).epsilon(1e-9));

  Integrand sign([](double t) { return t < 0.5 ? -1.0 : 1.0; });
  sign.with_breakpoints({0.5});
  CHECK(alexiewicz_norm(sign, leb, g1, family, 1e-9) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("grid refinement never decreases the alexiewicz lower bound") {
  testkit::Rng rng(505);
  VectorMeasure mu = documented_mu();
  Integrand f = testkit::integrand_of(testkit::random_piecewise_poly(rng, 0, 1));
  auto family = dyadic_subintervals(Interval::closed(0, 1), 4);
  DirectionGrid coarse = DirectionGrid::make(2, 16, SpaceNorm::euclidean);
  DirectionGrid fine = DirectionGrid::make(2, 64, SpaceNorm::euclidean);
  const double a = alexiewicz_norm(f, mu, coarse, family, 1e-8);
  const double b = alexiewicz_norm(f, mu, fine, family, 1e-8);
  CHECK(b + 1e-10 >= a);
}
