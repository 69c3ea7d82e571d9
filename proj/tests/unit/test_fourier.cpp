#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dioph/arcs.hpp"
#include "dioph/error.hpp"
#include "dioph/fourier.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace dioph;
using test_support::tables;

namespace {

// Integral of the indicator of `set` against e^{2 pi i k x}.
std::complex<double> indicator_coefficient(const ArcSet& set, i64 k) {
  if (k == 0) return measure(set);
  const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
  std::complex<double> sum{0.0, 0.0};
  for (const Arc& a : set.arcs()) {
    sum += (std::polar(1.0, w * a.hi) - std::polar(1.0, w * a.lo)) / std::complex<double>(0.0, w);
  }
  return sum;
}

}  // namespace

TEST_CASE("coefficients match direct integration of the indicator") {
  const auto p = make_profile(ConstantParams{0.3, 0.2});
  for (u64 n : {1u, 5u, 12u, 30u}) {
    const auto set = arcs_for(n, p, true, tables());
    for (i64 k = -7; k <= 7; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const auto got = coefficient(n, k, p, tables());
      const auto want = indicator_coefficient(set, k);
      CHECK(std::abs(got - want) <= 1e-12);
    }
  }
}

TEST_CASE("series reproduces exact intersections within the tail bound") {
  for (const auto& row : oracle::kIntersections) {
    CAPTURE(row.n);
    CAPTURE(row.m);
    SeriesOptions opt;
    opt.full_fractions = !row.reduced;
    const auto r = intersection_series(row.n, row.f_n, row.theta_n, row.m, row.f_m, row.theta_m, 1e-7, tables(), opt);
    CHECK(r.tail_bound <= 1e-7);
    CHECK(std::abs(r.value - row.exact) <= r.tail_bound + 1e-12);
    CHECK(r.terms_even_odd_split.even + r.terms_even_odd_split.odd ==
          doctest::Approx(r.value - (opt.full_fractions ? 4.0 * row.f_n * row.f_m
                                                        : 4.0 * row.f_n / row.n * row.f_m / row.m *
                                                              tables().totient(row.n) * tables().totient(row.m)))
              .epsilon(1e-9));
  }
}

TEST_CASE("tail rules") {
  const auto p = make_profile(ConstantParams{0.25, 0.0});
  SeriesOptions uni;
  uni.tail_rule = TailRule::uniform;
  const auto a = intersection_series(10, 14, p, 1e-6, tables());
  const auto b = intersection_series(10, 14, p, 1e-6, tables(), uni);
  CHECK(a.tail_rule == TailRule::periodic);
  CHECK(b.tail_rule == TailRule::uniform);
  CHECK(a.truncation_M < b.truncation_M);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-5));
  CHECK(std::string(to_string(TailRule::uniform)) == "uniform");
  CHECK(std::string(to_string(TailRule::periodic)) == "periodic");
}

TEST_CASE("series guards") {
  const auto p = make_profile(ConstantParams{0.25, 0.0});
  SeriesOptions tight;
  tight.term_budget = 100;
  CHECK_THROWS_AS(intersection_series(97, 89, p, 1e-12, tables(), tight), BudgetError);
  CHECK_THROWS_AS(intersection_series(3, 0.7, 0.0, 5, 0.2, 0.0, 1e-6, tables()), ValidationError);
  CHECK_THROWS_AS(intersection_series(3, 5, p, 0.0, tables()), ValidationError);
}

TEST_CASE("analytic truncation point and moment sum") {
  CHECK(analytic_truncation_point(2, 3, tables()) == doctest::Approx(2.0 * 2.0 * 1.0 * 16.0 * 81.0));
  const auto p = make_profile(ConstantParams{0.5, 0.0});
  double expected = 0.0;
  for (u64 n = 1; n <= 100; ++n) {
    const double d = tables().divisors(n);
    const double l = guarded_log(static_cast<double>(n));
    expected += 0.5 * d * d * d * l * l;
  }
  CHECK(moment_sum(100, p, tables()) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(second_moment_bound(100, p, tables()) == moment_sum(100, p, tables()));
}

TEST_CASE("Borel-Cantelli ratio against exact rational oracle") {
  const auto p = make_profile(ConstantParams{0.25, 0.0});
  const double exact = borel_cantelli_ratio(64, p, true, tables(), MeasureMode::exact);
  CHECK(exact == doctest::Approx(oracle::kBcRatio64Quarter).epsilon(1e-12));
  RatioOptions opt;
  opt.workers = 4;
  opt.series_rel_tol = 1e-4;
  const double series = borel_cantelli_ratio(64, p, true, tables(), MeasureMode::series, opt);
  CHECK(std::abs(series / oracle::kBcRatio64Quarter - 1.0) <= 1e-4);

  const auto shifted = make_profile(ConstantParams{0.25, 0.3});
  CHECK(borel_cantelli_ratio(32, shifted, true, tables(), MeasureMode::exact) ==
        doctest::Approx(oracle::kBcRatio32QuarterShifted).epsilon(1e-12));

  const double one_worker = borel_cantelli_ratio(64, p, true, tables(), MeasureMode::exact);
  opt.workers = 3;
  CHECK(borel_cantelli_ratio(64, p, true, tables(), MeasureMode::exact, opt) == one_worker);
}

TEST_CASE("Borel-Cantelli ratio guards") {
  const auto zero = make_profile(ConstantParams{0.0, 0.0});
  CHECK_THROWS_AS(borel_cantelli_ratio(16, zero, true, tables(), MeasureMode::exact), DegenerateInputError);
  RatioOptions opt;
  opt.pair_budget = 100;
  const auto p = make_profile(ConstantParams{0.25, 0.0});
  CHECK_THROWS_AS(borel_cantelli_ratio(64, p, true, tables(), MeasureMode::exact, opt), BudgetError);
}
