#include <doctest.h>

#include "dioph/counting.hpp"
#include "dioph/error.hpp"
#include "dioph/rng.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace dioph;
using test_support::tables;

TEST_CASE("counter rng matches the reference values") {
  CHECK(CounterRng(7).bits(3) == oracle::kRngBits_7_3);
  const CounterRng rng(0);
  for (std::size_t i = 0; i < oracle::kRngUniformSeed0.size(); ++i) CHECK(rng.uniform(i) == oracle::kRngUniformSeed0[i]);
  static_assert(CounterRng(1).bits(0) == CounterRng(1).bits(0, 0));
  CHECK(rng.uniform(0, 1) != rng.uniform(0, 0));
}

TEST_CASE("exact counts") {
  for (const auto& row : oracle::kCounts) {
    CAPTURE(row.x);
    CAPTURE(row.N);
    const auto p = make_profile(ConstantParams{row.f, row.theta});
    const auto r = count_solutions(row.x, row.N, p, tables());
    CHECK(r.S == row.S);
    CHECK(count_pairs(row.x, row.N, p.tabulate(row.N), tables()) == row.S);
  }
}

TEST_CASE("expected count") {
  const auto p = make_profile(ConstantParams{0.5, 0.0});
  const auto r = count_solutions(0.25, oracle::kTailN, p, tables());
  CHECK(r.E_N == doctest::Approx(oracle::kExpectedCount2000).epsilon(1e-13));
  REQUIRE(r.ratio.has_value());
  CHECK(*r.ratio == doctest::Approx(static_cast<double>(r.S) / r.E_N));
  CHECK(expected_count(oracle::kTailN, p.tabulate(oracle::kTailN), tables()) == r.E_N);
  const auto zero = make_profile(ConstantParams{0.0, 0.0});
  CHECK_FALSE(count_solutions(0.3, 100, zero, tables()).ratio.has_value());
}

TEST_CASE("overlapping arcs count each pair once") {
  // f(n) = n/2 - tiny covers the whole circle for n >= 2; every coprime m is counted
  const auto p = make_profile(PowerParams{1.0000001, 0.0});
  const auto r = count_solutions(0.37, 50, p, tables());
  u64 phi_sum = 0;
  for (u64 n = 1; n <= 50; ++n) phi_sum += tables().totient(n);
  CHECK(r.S <= phi_sum);
}

TEST_CASE("tail fraction regression") {
  const auto p = make_profile(ConstantParams{0.5, 0.0});
  const double t1 = tail_fraction(oracle::kTailN, oracle::kTailBeta, oracle::kTailSamples, oracle::kTailSeed, p, tables());
  CHECK(t1 == oracle::kTailFraction);
  CHECK(tail_fraction(oracle::kTailN, oracle::kTailBeta, oracle::kTailSamples, oracle::kTailSeed, p, tables(), 4) == t1);
}

TEST_CASE("sampling is independent of worker count") {
  const auto p = make_profile(ConstantParams{0.4, 0.1});
  SampleOptions one{50, 3, 1};
  SampleOptions many{50, 3, 5};
  const auto a = sample_counts(3000, p, tables(), one);
  const auto b = sample_counts(3000, p, tables(), many);
  REQUIRE(a.size() == 50);
  REQUIRE(b.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == CounterRng(3).uniform(i));
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].S == b[i].S);
  }
}

TEST_CASE("summary statistics") {
  std::vector<CountReport> reports;
  for (u64 i = 1; i <= 10; ++i) reports.push_back(CountReport{10, i, 4.0, static_cast<double>(i) / 4.0, 0.0});
  const auto s = summarize(reports);
  CHECK(s.samples == 10);
  CHECK(s.E_N == 4.0);
  CHECK(s.mean_S == doctest::Approx(5.5));
  CHECK(s.mean_ratio == doctest::Approx(5.5 / 4.0));
  CHECK(s.median_ratio == doctest::Approx(5.5 / 4.0));
  CHECK(s.ratio_deciles.front() <= s.ratio_deciles.back());
  CHECK_THROWS(summarize(std::vector<CountReport>{}));
}
