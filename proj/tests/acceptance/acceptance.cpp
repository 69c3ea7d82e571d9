// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dioph/arcs.hpp"
#include "dioph/arith.hpp"
#include "dioph/counting.hpp"
#include "dioph/criteria.hpp"
#include "dioph/dimension.hpp"
#include "dioph/fourier.hpp"
#include "dioph/io.hpp"
#include "dioph/parallel.hpp"

using namespace dioph;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1: closed form against the exponential sum, 1 <= n <= 200, 0 <= k <= 400.
Outcome ramanujan_identity(const ArithTables& t) {
  u64 bad = 0;
  for (u64 n = 1; n <= 200; ++n) {
    for (i64 k = 0; k <= 400; ++k) bad += ramanujan(n, k, t) != ramanujan_direct(n, k);
  }
  return {bad == 0, "80400 cases, mismatches=" + std::to_string(bad)};
}

// 2: d(k)^2 = sum_{l|k} d(l^2) for k <= 1e5.
Outcome divisor_identity() {
  u64 bad = 0;
  for (u64 k = 1; k <= 100'000; ++k) bad += !divisor_square_identity(k);
  return {bad == 0, "k<=1e5, failures=" + std::to_string(bad)};
}

// 3: truncated series against the exact sweep for 500 random admissible pairs.
Outcome series_vs_sweep(const ArithTables& t) {
  constexpr double kTol = 1e-6;
  constexpr double kRoundoff = 1e-12;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<u64> pick(1, 200);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  struct Case {
    u64 n, m;
    double fn, tn, fm, tm;
  };
  std::vector<Case> cases(500);
  for (auto& c : cases) c = {pick(rng), pick(rng), half(rng), half(rng), half(rng), half(rng)};
  std::vector<double> err(cases.size());
  std::vector<char> ok(cases.size());
  parallel_for(cases.size(), workers(), [&](std::size_t i) {
    const auto& c = cases[i];
    const auto r = intersection_series(c.n, c.fn, c.tn, c.m, c.fm, c.tm, kTol, t);
    const double exact = measure(intersect(arcs_for(c.n, c.fn, c.tn, true), arcs_for(c.m, c.fm, c.tm, true)));
    err[i] = std::abs(r.value - exact);
    ok[i] = err[i] <= std::min(r.tail_bound, kTol) + kRoundoff;
  });
  const auto violations = std::count(ok.begin(), ok.end(), 0);
  return {violations == 0, "max|series-exact|=" + fmt("%.3g", *std::max_element(err.begin(), err.end())) +
                               ", violations=" + std::to_string(violations)};
}

// 4: measure identity for n <= 1e4 under random admissible profiles.
Outcome measure_identity(const ArithTables& t) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<TableRow> rows;
    for (u64 n = 1; n <= 10'000; ++n) rows.push_back({n, half(rng), half(rng)});
    const auto p = make_profile(TableParams{rows, Range::standard});
    for (u64 n = 1; n <= 10'000; ++n) {
      const double want = 2.0 * p.epsilon(n) * t.totient(n);
      worst = std::max(worst, std::abs(measure(arcs_for(n, p, true, t)) - want));
    }
  }
  return {worst <= 1e-12, "max deviation=" + fmt("%.3g", worst)};
}

// 5: median S/E_N over 200 points at N = 1e5, f = 1/2, theta in {0, 0.3}.
Outcome counting_shadow(const ArithTables& t) {
  constexpr u64 N = 100'000;
  bool ok = true;
  std::string detail;
  for (double theta : {0.0, 0.3}) {
    const auto p = make_profile(ConstantParams{0.5, theta});
    const auto reports = sample_counts(N, p, t, {200, 1, workers()});
    const auto s = summarize(reports);
    const double mean_target = 6.0 / (std::numbers::pi * std::numbers::pi) * static_cast<double>(N);
    const bool e_ok = std::abs(s.E_N / mean_target - 1.0) <= 0.01;
    ok = ok && e_ok && s.median_ratio >= 0.97 && s.median_ratio <= 1.03;
    detail += fmt("theta=%g: ", theta) + fmt("median=%.5f ", s.median_ratio) + fmt("E_N=%.1f; ", s.E_N);
  }
  return {ok, detail};
}

// 6: counting-exponent and box-count estimates for the power family.
Outcome dimension_shadow(const ArithTables& t) {
  const auto grid = alpha_grid(1.0, 5.0, 400);
  std::vector<u64> schedule;
  for (unsigned e = 6; e <= 12; ++e) schedule.push_back(u64{1} << e);
  BoxCountOptions base;
  base.workers = workers();
  bool ok = true;
  std::string detail;
  for (double tau : {2.0, 3.0, 4.0}) {
    const auto p = make_profile(PowerParams{tau, 0.0});
    const double target = 2.0 / tau;
    const double hs = hs_dimension(p, u64{1} << 20, grid).hs_dimension;
    std::vector<double> slopes;
    for (double shift : {0.0, 0.1, 0.3, 0.5}) {
      auto opt = base;
      opt.shift_override = shift;
      slopes.push_back(box_count_estimate(p, schedule, t, opt));
    }
    auto full = base;
    full.reduced = false;
    slopes.push_back(box_count_estimate(p, schedule, t, full));
    const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
    const bool tau_ok = std::abs(hs - target) <= 0.02 && std::abs(slopes[0] - hs) <= 0.1 && *hi - *lo <= 0.1;
    ok = ok && tau_ok;
    detail += fmt("tau=%g: ", tau) + fmt("hs=%.4f ", hs) + fmt("box=%.4f ", slopes[0]) +
              fmt("spread=%.4f; ", *hi - *lo);
  }
  return {ok, detail};
}

// 7: lemma and classical ratio families show no upward trend.
Outcome bound_suites(const ArithTables& t) {
  std::vector<double> l1;
  for (u64 m : {100u, 1000u, 10000u}) {
    double best = 0.0;
    for (u64 k = 1; k <= 100; ++k) best = std::max(best, lemma1_ratio(k, m, t));
    l1.push_back(best);
  }
  const auto l2 = lemma2_ratios(dyadic_checkpoints(4, 20), t);
  std::vector<double> l3(10'000 - 1);
  parallel_for(l3.size(), workers(), [&](std::size_t i) { l3[i] = lemma3_ratio(i + 2, t); });
  std::vector<double> mert;
  for (u64 m : dyadic_checkpoints(2, 20)) mert.push_back(mertens_ratio(m, t));
  const double m6 = mertens_ratio(1'000'000, t);
  const double eg = std::exp(std::numbers::egamma);
  const auto scan = totient_liminf_scan(10, 1'000'000, t);
  const bool ok = no_upward_trend(l1) && no_upward_trend(l2) && no_upward_trend(l3) && no_upward_trend(mert) &&
                  std::abs(m6 / eg - 1.0) <= 0.1 && scan.min > 0.25;
  return {ok, fmt("mertens(1e6)/e^gamma=%.5f ", m6 / eg) + fmt("totient min=%.5f", scan.min) +
                  " at n=" + std::to_string(scan.argmin)};
}

// 8: all-fractions intersection bound on random tuples and the f = 1/2 grid.
Outcome intersection_bound(const ArithTables& t) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<u64> pick(1, 300);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  u64 violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const u64 n = pick(rng);
    const u64 m = pick(rng);
    violations += !leveque_bound_check(n, half(rng), half(rng), m, half(rng), half(rng)).holds;
  }
  const auto p = make_profile(ConstantParams{0.5, 0.0});
  std::vector<u64> row_bad(300, 0);
  parallel_for(300, workers(), [&](std::size_t i) {
    for (u64 m = 1; m <= 300; ++m) row_bad[i] += !leveque_bound_check(i + 1, m, p, t).holds;
  });
  for (u64 b : row_bad) violations += b;
  return {violations == 0, "91000 checks, violations=" + std::to_string(violations)};
}

// 9: criterion trace labels, shift invariance and the upper-bound check.
Outcome criterion_traces(const ArithTables& t) {
  const auto cps = dyadic_checkpoints(4, 20);
  const auto half = make_profile(ConstantParams{0.5, 0.0});
  const auto cor = criterion_trace(CriterionKind::cor1_4, half, cps, t);
  const auto power = make_profile(PowerParams{2.0, 0.0});
  bool invariant = true;
  const auto base = criterion_trace(CriterionKind::thm1_3, power, cps, t);
  for (double theta : {0.1, 0.3, 0.5}) {
    invariant = invariant && criterion_trace(CriterionKind::thm1_3, power.with_theta(theta), cps, t).quotients ==
                                 base.quotients;
  }
  CriterionParams params;
  params.a_b = std::pair{10.0, 7.5};
  const auto cab = criterion_trace(CriterionKind::cab, make_profile(PaperExampleParams{}), cps, t, params);
  const bool bounds = std::all_of(cab.bound_ok.begin(), cab.bound_ok.end(), [](bool b) { return b; });
  const bool ok = cor.verdict == Verdict::diverging_trend && invariant && bounds;
  return {ok, std::string("cor1_4 verdict=") + to_string(cor.verdict) + ", thm1_3 shift-invariant=" +
                  (invariant ? "yes" : "no") + ", cab bound checks=" + (bounds ? "all pass" : "failed")};
}

// 10: repeated runs, and runs with different worker counts, serialize identically.
Outcome determinism(const ArithTables& t) {
  const auto p = make_profile(PowerParams{2.5, 0.2});
  const auto cps = dyadic_checkpoints(4, 16);
  auto crit = [&] { return trace_csv(criterion_trace(CriterionKind::thmpo, p, cps, t)); };
  auto counts = [&](unsigned w) {
    return counts_csv(sample_counts(20'000, make_profile(ConstantParams{0.5, 0.3}), t, {64, 42, w}));
  };
  const std::vector<u64> schedule{64, 128, 256, 512};
  const auto grid = alpha_grid(1.0, 4.0, 60);
  auto dim = [&](unsigned w) {
    BoxCountOptions opt;
    opt.workers = w;
    return dimension_csv(hs_dimension(p, u64{1} << 16, grid)) + box_count_csv(box_count(p, schedule, t, opt));
  };
  const bool a = crit() == crit();
  const bool b = counts(1) == counts(1) && counts(1) == counts(4);
  const bool c = dim(1) == dim(1) && dim(1) == dim(4);
  return {a && b && c, std::string("criteria=") + (a ? "identical" : "differs") + ", counts=" +
                           (b ? "identical" : "differs") + ", dimension=" + (c ? "identical" : "differs")};
}

}  // namespace

int main() {
  const auto tables = build_tables(u64{1} << 20);
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 10, [&] { return ramanujan_identity(tables); }},
      {2, 30, [] { return divisor_identity(); }},
      {3, 60, [&] { return series_vs_sweep(tables); }},
      {4, 60, [&] { return measure_identity(tables); }},
      {5, 60, [&] { return counting_shadow(tables); }},
      {6, 300, [&] { return dimension_shadow(tables); }},
      {7, 120, [&] { return bound_suites(tables); }},
      {8, 60, [&] { return intersection_bound(tables); }},
      {9, 60, [&] { return criterion_traces(tables); }},
      {10, 600, [&] { return determinism(tables); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("criterion %2d: %s  %s [%.2fs, budget %.0fs%s]\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures;
}
