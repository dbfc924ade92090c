#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gm/interval.hpp"
#include "testkit.hpp"

using namespace gm;

TEST_CASE("indicator") {
  MeasurableSet a(Interval::closed(0, 1));
  CHECK(indicator(a, 0.5) == 1);
  CHECK(indicator(a, 2.0) == 0);
  CHECK(indicator(a, 0.0) == 1);
  CHECK(indicator(a, 1.0) == 1);

  MeasurableSet empty;
  CHECK(indicator(empty, 0.0) == 0);
  CHECK(indicator(empty, 123.0) == 0);
}

TEST_CASE("interval closures") {
  Interval iv = Interval::left_open(1, 2);
  CHECK(!iv.contains(1.0));
  CHECK(iv.contains(2.0));
  CHECK(iv.contains(1.5));
  CHECK(Interval::point(3.0).contains(3.0));
  CHECK(Interval::open(3.0, 3.0).empty());

  Interval tail(10, kInf, false, true);
  CHECK(tail.contains(kInf));
  CHECK(tail.contains(11.0));
  CHECK(!tail.contains(10.0));
}

TEST_CASE("set_algebra examples") {
  MeasurableSet a(Interval::closed(0, 1));
  MeasurableSet b(Interval::closed(1, 2));
  MeasurableSet u = set_union(a, b);
  REQUIRE(u.parts().size() == 1);
  CHECK(u.parts()[0] == Interval::closed(0, 2));

  MeasurableSet big(Interval::closed(0, 2));
  MeasurableSet d = set_difference(big, a);
  REQUIRE(d.parts().size() == 1);
  CHECK(d.parts()[0] == Interval::left_open(1, 2));

  MeasurableSet c(Interval::closed(2, 3));
  CHECK(set_intersect(a, c).empty());
}

TEST_CASE("canonical form merges touching pieces") {
  MeasurableSet s({Interval::closed(0, 1), Interval::left_open(1, 2)});
  REQUIRE(s.parts().size() == 1);
  CHECK(s.parts()[0] == Interval::closed(0, 2));

  // Open-open at a shared endpoint keeps the gap point out.
  MeasurableSet t({Interval::right_open(0, 1), Interval::left_open(1, 2)});
  REQUIRE(t.parts().size() == 2);
  CHECK(!t.contains(1.0));
}

TEST_CASE("canonicalization is idempotent on set_algebra results") {
  testkit::Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    MeasurableSet a = testkit::random_set(rng, 0, 4);
    MeasurableSet b = testkit::random_set(rng, 0, 4);
    for (auto op : {SetOp::unite, SetOp::intersect, SetOp::diff}) {
      MeasurableSet r = set_algebra(a, b, op);
      CHECK(MeasurableSet(r.parts()) == r);
    }
  }
}

TEST_CASE("diff satisfies A = (A cap B) disjoint-union (A minus B)") {
  testkit::Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    MeasurableSet a = testkit::random_set(rng, -2, 2);
    MeasurableSet b = testkit::random_set(rng, -2, 2);
    MeasurableSet inter = set_intersect(a, b);
    MeasurableSet diff = set_difference(a, b);
    CHECK(set_intersect(inter, diff).empty());
    CHECK(set_union(inter, diff) == a);
  }
}

TEST_CASE("unbounded parts through set algebra") {
  MeasurableSet a(Interval(0, kInf, true, true));
  MeasurableSet b(Interval::closed(2, 3));
  MeasurableSet d = set_difference(a, b);
  REQUIRE(d.parts().size() == 2);
  CHECK(d.parts()[0] == Interval::right_open(0, 2));
  CHECK(d.parts()[1] == Interval(3, kInf, false, true));
  CHECK(d.contains(kInf));
  CHECK(d.unbounded());

  // An isolated ideal point is dropped.
  MeasurableSet half_open(Interval(0, kInf, true, false));
  CHECK(set_difference(a, half_open).empty());
}
