#pragma once

// Counting approximating fractions: S(x, N) is the number of coprime pairs
// (n, m), n <= N, 1 <= m <= n, with ||x - (m + theta(n))/n|| < f(n)/n, where
// ||.|| is the distance to the nearest integer. Its mean over x is
// E_N = sum_{n<=N} 2 (f(n)/n) phi(n).

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/profile.hpp"

namespace dioph {

struct CountReport {
  u64 N = 0;
  u64 S = 0;
  double E_N = 0.0;
  std::optional<double> ratio;  // S / E_N, when E_N > 0
  double x = 0.0;
};

/// Exact S(x, N) and E_N. Scans only the integers within f(n) of n x - theta(n)
/// for each n. Overlapping arcs (f(n) > 1/2) count once per pair (n, m).
CountReport count_solutions(double x, u64 N, const ApproxProfile& profile, const ArithTables& tables);

/// Same count from a tabulated profile (size >= N). Hot path for sampling.
u64 count_pairs(double x, u64 N, const ProfileSamples& samples, const ArithTables& tables);

/// E_N from a tabulated profile.
double expected_count(u64 N, const ProfileSamples& samples, const ArithTables& tables);

/// Constant-free variance budget sum eps_n n d(n)^3 log^2 n. Same kernel as
/// second_moment_bound, so the two agree bit for bit.
double variance_budget(u64 N, const ApproxProfile& profile, const ArithTables& tables);

struct SampleOptions {
  u64 samples = 200;
  u64 seed = 0;
  unsigned workers = 1;
};

/// CountReports at the uniform points x_i = CounterRng(seed).uniform(i).
std::vector<CountReport> sample_counts(u64 N, const ApproxProfile& profile, const ArithTables& tables,
                                       const SampleOptions& options);

/// Fraction of sampled x with |S - E_N| >= beta.
double tail_fraction(u64 N, double beta, u64 samples, u64 seed, const ApproxProfile& profile,
                     const ArithTables& tables, unsigned workers = 1);

struct CountSummary {
  u64 samples = 0;
  double E_N = 0.0;
  double mean_S = 0.0;
  double median_ratio = 0.0;
  double mean_ratio = 0.0;
  std::array<double, 9> ratio_deciles{};  // 10%, 20%, ..., 90%
};

/// Summary statistics of S / E_N. Requires E_N > 0.
CountSummary summarize(std::span<const CountReport> reports);

}  // namespace dioph
