#include "dioph/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dioph/error.hpp"
#include "dioph/fourier.hpp"
#include "dioph/parallel.hpp"
#include "dioph/rng.hpp"

namespace dioph {

namespace {

u64 binary_gcd(u64 a, u64 b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

u64 residue(i64 m, u64 n) noexcept {
  const i64 r = m % static_cast<i64>(n);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(n) : r);
}

}  // namespace

u64 count_pairs(double x, u64 N, const ProfileSamples& samples, const ArithTables& tables) {
  if (samples.size() < N) throw ValidationError("count_pairs: profile tabulated below N");
  tables.require(N);
  const double y = x - std::floor(x);
  u64 total = 0;
  for (u64 n = 1; n <= N; ++n) {
    const double f = samples.f[n];
    if (!(f > 0.0)) continue;
    const double t = static_cast<double>(n) * y - samples.theta[n];
    // integers strictly inside (t - f, t + f)
    const double first = std::floor(t - f) + 1.0;
    const double last = std::ceil(t + f) - 1.0;
    if (last < first) continue;
    if (last - first + 1.0 >= static_cast<double>(n)) {
      total += tables.totient(n);  // every residue class is hit
      continue;
    }
    for (auto m = static_cast<i64>(first); m <= static_cast<i64>(last); ++m) {
      if (std::abs(t - static_cast<double>(m)) >= f) continue;
      if (binary_gcd(residue(m, n), n) == 1) ++total;
    }
  }
  return total;
}

double expected_count(u64 N, const ProfileSamples& samples, const ArithTables& tables) {
  tables.require(N);
  double sum = 0.0;
  for (u64 n = 1; n <= N; ++n) sum += 2.0 * samples.epsilon(n) * tables.totient(n);
  return sum;
}

CountReport count_solutions(double x, u64 N, const ApproxProfile& profile, const ArithTables& tables) {
  if (N == 0) throw ValidationError("count_solutions: N must be positive");
  const ProfileSamples samples = profile.tabulate(N);
  CountReport r;
  r.N = N;
  r.x = x;
  r.S = count_pairs(x, N, samples, tables);
  r.E_N = expected_count(N, samples, tables);
  if (r.E_N > 0.0) r.ratio = static_cast<double>(r.S) / r.E_N;
  return r;
}

double variance_budget(u64 N, const ApproxProfile& profile, const ArithTables& tables) {
  return moment_sum(N, profile, tables);
}

std::vector<CountReport> sample_counts(u64 N, const ApproxProfile& profile, const ArithTables& tables,
                                       const SampleOptions& options) {
  if (N == 0) throw ValidationError("sample_counts: N must be positive");
  if (options.samples == 0) throw ValidationError("sample_counts: need at least one sample");
  const ProfileSamples samples = profile.tabulate(N);
  const double expected = expected_count(N, samples, tables);
  const CounterRng rng(options.seed);

  std::vector<CountReport> out(options.samples);
  parallel_for(options.samples, options.workers, [&](std::size_t i) {
    CountReport& r = out[i];
    r.N = N;
    r.x = rng.uniform(i);
    r.S = count_pairs(r.x, N, samples, tables);
    r.E_N = expected;
    if (expected > 0.0) r.ratio = static_cast<double>(r.S) / expected;
  });
  return out;
}

double tail_fraction(u64 N, double beta, u64 samples, u64 seed, const ApproxProfile& profile,
                     const ArithTables& tables, unsigned workers) {
  if (!(beta > 0.0)) throw ValidationError("tail_fraction: beta must be positive");
  const auto reports = sample_counts(N, profile, tables, SampleOptions{samples, seed, workers});
  u64 hits = 0;
  for (const auto& r : reports) {
    if (std::abs(static_cast<double>(r.S) - r.E_N) >= beta) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

namespace {

// Linear interpolation between order statistics (type 7 quantile).
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

CountSummary summarize(std::span<const CountReport> reports) {
  if (reports.empty()) throw ValidationError("summarize: no reports");
  CountSummary s;
  s.samples = reports.size();
  s.E_N = reports.front().E_N;
  if (!(s.E_N > 0.0)) throw DegenerateInputError("summarize: E_N = 0, ratio undefined");
  std::vector<double> ratios;
  ratios.reserve(reports.size());
  double sum_s = 0.0;
  for (const auto& r : reports) {
    sum_s += static_cast<double>(r.S);
    ratios.push_back(static_cast<double>(r.S) / r.E_N);
  }
  s.mean_S = sum_s / static_cast<double>(reports.size());
  s.mean_ratio = s.mean_S / s.E_N;
  std::sort(ratios.begin(), ratios.end());
  s.median_ratio = quantile(ratios, 0.5);
  for (std::size_t i = 0; i < s.ratio_deciles.size(); ++i) {
    s.ratio_deciles[i] = quantile(ratios, static_cast<double>(i + 1) / 10.0);
  }
  return s;
}

}  // namespace dioph
