#include <doctest.h>

#include <random>

#include "dioph/arcs.hpp"
#include "dioph/error.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace dioph;
using test_support::tables;

TEST_CASE("canonicalization merges, clips and sorts") {
  const auto s = ArcSet::canonicalize({{0.5, 0.7}, {0.1, 0.2}, {0.65, 0.8}, {0.2, 0.3}, {0.9, 0.9}, {-0.1, 0.05}});
  REQUIRE(s.arcs().size() == 3);
  CHECK(s.arcs()[0] == Arc{0.0, 0.05});
  CHECK(s.arcs()[1] == Arc{0.1, 0.3});
  CHECK(s.arcs()[2] == Arc{0.5, 0.8});
  CHECK(measure(s) == doctest::Approx(0.55));
  CHECK(ArcSet::full_circle().total_measure() == 1.0);
  CHECK(ArcSet{}.empty());
}

TEST_CASE("arc sets for small n") {
  // n = 1, f = 1/4, theta = 0: the arc (-1/4, 1/4) wraps around 0
  const auto a = arcs_for(1, 0.25, 0.0, true);
  REQUIRE(a.arcs().size() == 2);
  CHECK(a.arcs()[0].lo == 0.0);
  CHECK(a.arcs()[0].hi == doctest::Approx(0.25));
  CHECK(a.arcs()[1].lo == doctest::Approx(0.75));
  CHECK(a.arcs()[1].hi == 1.0);
  CHECK(measure(a) == doctest::Approx(0.5));
  CHECK(measure(arcs_for(4, 0.5, 0.0, true)) == doctest::Approx(0.5));
  CHECK(measure(arcs_for(4, 0.5, 0.0, false)) == doctest::Approx(1.0));
  CHECK(measure(arcs_for(4, 0.0, 0.0, true)) == 0.0);
  CHECK(arcs_for(3, 2.0, 0.0, true) == ArcSet::full_circle());
}

TEST_CASE("clipped topology drops the wrapped part") {
  const auto a = arcs_for(1, 0.25, 0.0, true, Topology::clipped);
  CHECK(measure(a) == doctest::Approx(0.25));
  const auto p = make_profile(ConstantParams{0.5, 0.25});
  for (u64 n = 2; n <= 200; ++n) {
    // centers (m + theta)/n for m = 1..n stay inside (0, 1] for theta <= 1/2 except the last
    const double circle = measure(arcs_for(n, p, true, tables()));
    const double clipped = measure(arcs_for(n, p, true, tables(), Topology::clipped));
    CHECK(clipped <= circle + 1e-15);
  }
}

TEST_CASE("measure identity on the reduced sets") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (u64 n = 1; n <= 2000; ++n) {
    const double f = u(rng);
    const double theta = u(rng);
    const double expected = 2.0 * f / static_cast<double>(n) * tables().totient(n);
    CHECK(std::abs(measure(arcs_for(n, f, theta, true)) - expected) <= 1e-12);
  }
}

TEST_CASE("intersections match exact rational oracle") {
  for (const auto& row : oracle::kIntersections) {
    CAPTURE(row.n);
    CAPTURE(row.m);
    const auto a = arcs_for(row.n, row.f_n, row.theta_n, row.reduced);
    const auto b = arcs_for(row.m, row.f_m, row.theta_m, row.reduced);
    CHECK(measure(intersect(a, b)) == doctest::Approx(row.exact).epsilon(1e-12));
    CHECK(measure(intersect(b, a)) == doctest::Approx(row.exact).epsilon(1e-12));
  }
}

TEST_CASE("union measure and membership") {
  const std::vector<ArcSet> sets{ArcSet::canonicalize({{0.1, 0.3}}), ArcSet::canonicalize({{0.2, 0.5}}),
                                 ArcSet::canonicalize({{0.9, 1.0}, {0.0, 0.05}})};
  CHECK(union_measure(sets) == doctest::Approx(0.55));
  const auto& a = sets[0];
  CHECK(contains(a, 0.2));
  CHECK_FALSE(contains(a, 0.1));  // open at endpoints
  CHECK_FALSE(contains(a, 0.3));
  CHECK(contains(a, 1.2));        // taken mod 1
  CHECK(contains(sets[2], 0.0));  // the seam is interior when both sides are covered
  CHECK(contains(sets[2], 1.0));
  CHECK_FALSE(contains(ArcSet::canonicalize({{0.0, 0.05}}), 0.0));
}
