#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dioph/arith.hpp"
#include "dioph/error.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace dioph;
using test_support::tables;

TEST_CASE("sieve tables match reference values") {
  for (const auto& row : oracle::kArith) {
    CAPTURE(row.n);
    CHECK(tables().totient(row.n) == row.phi);
    CHECK(tables().divisors(row.n) == row.d);
    CHECK(tables().mobius(row.n) == row.mu);
  }
  const auto small = build_tables(1'000'000);
  CHECK(small.primes().size() == oracle::kPrimesBelow1e6);
}

TEST_CASE("sieve agrees with trial division on a prefix") {
  for (u64 n = 1; n <= 5000; ++n) {
    CAPTURE(n);
    CHECK(tables().divisors(n) == count_divisors(n));
    u64 coprime = 0;
    for (u64 m = 1; m <= n; ++m) coprime += std::gcd(m, n) == 1 ? 1 : 0;
    CHECK(tables().totient(n) == coprime);
  }
}

TEST_CASE("sieve capacity errors") {
  CHECK_THROWS_AS(build_tables(0), CapacityError);
  CHECK_THROWS_AS(build_tables(100, 50), CapacityError);
  const auto t = build_tables(10);
  CHECK_THROWS_AS(t.totient(11), CapacityError);
  CHECK_THROWS_AS(t.totient(0), CapacityError);
  CHECK(t.limit() == 10);
}

TEST_CASE("ramanujan sums match the divisor-sum oracle") {
  for (const auto& row : oracle::kRamanujan) {
    CAPTURE(row.n);
    CAPTURE(row.k);
    CHECK(ramanujan(row.n, row.k, tables()) == row.value);
    CHECK(ramanujan(row.n, -row.k, tables()) == row.value);
    if (row.n <= 400) CHECK(ramanujan_direct(row.n, row.k) == row.value);
  }
}

TEST_CASE("ramanujan special values") {
  for (u64 n = 1; n <= 300; ++n) {
    CHECK(ramanujan(n, 0, tables()) == tables().totient(n));
    CHECK(ramanujan(n, 1, tables()) == tables().mobius(n));
    CHECK(ramanujan(n, static_cast<i64>(n), tables()) == tables().totient(n));
  }
  CHECK(ramanujan(1, 12345, tables()) == 1);
}

TEST_CASE("full trigonometric sum") {
  CHECK(full_trig_sum(6, 12) == 6);
  CHECK(full_trig_sum(6, 13) == 0);
  CHECK(full_trig_sum(6, 0) == 6);
  CHECK(full_trig_sum(6, -18) == 6);
  CHECK(full_trig_sum(1, 7) == 1);
}

TEST_CASE("dtilde and the gcd-sum identity") {
  for (const auto& row : oracle::kDtilde) {
    CAPTURE(row.n);
    CHECK(dtilde(row.n, tables()) == Rational{row.num, row.den});
    CHECK(gcd_sum(row.n) == row.gcd_sum);
  }
  for (u64 n = 1; n <= 3000; ++n) {
    const Rational dt = dtilde(n, tables());
    CHECK(gcd_sum(n) * static_cast<u64>(dt.den) == n * static_cast<u64>(dt.num));
    CHECK(gcd_sum(n) <= n * tables().divisors(n));
    CHECK(dt.value() <= static_cast<double>(tables().divisors(n)));
  }
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational::make(2, -4) == Rational{-1, 2});
  CHECK(Rational::make(0, 5) == Rational{0, 1});
  CHECK_THROWS_AS(Rational::make(1, 0), ValidationError);
  CHECK(Rational::make(1, 2) + Rational::make(1, 3) == Rational{5, 6});
  const Rational big{INT64_MAX / 2 + 1, 1};
  CHECK_THROWS_AS(big + big, CapacityError);
}

TEST_CASE("divisor helpers") {
  CHECK(divisors_of(1) == std::vector<u64>{1});
  CHECK(divisors_of(36) == std::vector<u64>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  CHECK(count_divisors(720720) == 240);
}

TEST_CASE("divisor square identity on a prefix") {
  for (u64 k = 1; k <= 20000; ++k) REQUIRE(divisor_square_identity(k));
  CHECK_THROWS_AS(divisor_square_identity(0), ValidationError);
}

TEST_CASE("guarded log") {
  CHECK(guarded_log(0.0) == 2.0);
  CHECK(guarded_log(1.0) == 2.0);
  CHECK(guarded_log(0.5) == 2.0);
  CHECK(guarded_log(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(guarded_log(guarded_log(2.0)) == 2.0);
}
