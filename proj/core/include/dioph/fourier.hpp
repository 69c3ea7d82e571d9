#pragma once

// Fourier side of the approximation sets. With g_n the indicator of A_n and
// eps_n = f(n)/n,
//
//   g_n^(k) = sin(2 pi eps_n k) c_n(k) e^{2 pi i theta(n) k / n} / (pi k),   k != 0
//   g_n^(0) = 2 eps_n phi(n)
//
// and lambda(A_n ∩ A_m) = sum_k g_n^(k) g_m^(-k), i.e.
//
//   4 eps_n eps_m phi(n) phi(m)
//     + (2/pi^2) sum_{k>=1} sin(2 pi eps_n k) c_n(k) sin(2 pi eps_m k) c_m(k)
//                           cos(2 pi (theta(n)/n - theta(m)/m) k) / k^2.
//
// For the all-fractions sets the Ramanujan sum c_n(k) is replaced by the full
// trigonometric sum (n when n | k, else 0) and phi(n) by n.

#include <complex>
#include <optional>

#include "dioph/arith.hpp"
#include "dioph/profile.hpp"

namespace dioph {

/// g_n^(k) for the reduced set A_n.
std::complex<double> coefficient(u64 n, i64 k, const ApproxProfile& profile, const ArithTables& tables);

/// How the truncation point M is derived from the requested tolerance.
enum class TailRule {
  /// Every term is bounded by phi(n) phi(m) / k^2, so the tail after M is at
  /// most (2/pi^2) phi(n) phi(m) / M.
  uniform,
  /// |c_n(k) c_m(k)| is periodic in k with period L = lcm(n, m) and mean a.
  /// Summing block by block bounds the tail after M by
  /// (2/pi^2) a (1/M + L/M^2). Far tighter than `uniform`.
  periodic,
};

const char* to_string(TailRule rule) noexcept;

struct SeriesOptions {
  TailRule tail_rule = TailRule::periodic;
  /// Largest M accepted before BudgetError.
  u64 term_budget = u64{2'000'000'000};
  /// All fractions instead of reduced ones.
  bool full_fractions = false;
  /// Periods longer than this fall back to the uniform rule.
  u64 max_period_scan = u64{50'000'000};
};

struct EvenOddSplit {
  double even = 0.0;  // (2/pi^2) * partial sum over even k
  double odd = 0.0;   // (2/pi^2) * partial sum over odd k
};

struct SeriesResult {
  double value = 0.0;
  u64 truncation_M = 1;
  double tail_bound = 0.0;
  TailRule tail_rule = TailRule::periodic;
  EvenOddSplit terms_even_odd_split;
};

/// lambda(A_n ∩ A_m) from the Fourier series truncated at the least M whose
/// tail bound is <= tol. Requires f(n), f(m) <= 1/2. Throws BudgetError
/// carrying the required M when it exceeds options.term_budget.
SeriesResult intersection_series(u64 n, u64 m, const ApproxProfile& profile, double tol, const ArithTables& tables,
                                 const SeriesOptions& options = {});

/// Same, from evaluated profile values.
SeriesResult intersection_series(u64 n, double f_n, double theta_n, u64 m, double f_m, double theta_m, double tol,
                                 const ArithTables& tables, const SeriesOptions& options = {});

/// The truncation point d(n) d(m) (n,m) n^4 m^4 used in the analytic upper
/// bound, as a double (it overflows 64 bits quickly). Diagnostic only.
double analytic_truncation_point(u64 n, u64 m, const ArithTables& tables);

/// sum_{n<=N} eps_n n d(n)^3 log^2 n with log 1 := 2, summed in ascending n.
double moment_sum(u64 N, const ApproxProfile& profile, const ArithTables& tables);

/// Constant-free dominant term of the second-moment upper bound; equals moment_sum.
double second_moment_bound(u64 N, const ApproxProfile& profile, const ArithTables& tables);

enum class MeasureMode { exact, series };

struct RatioOptions {
  /// Largest N^2 accepted before BudgetError.
  u64 pair_budget = u64{1} << 22;
  /// Series mode: per-pair tolerance is rel_tol * (sum lambda(A_n))^2 / N^2,
  /// which bounds the relative error of the denominator by rel_tol.
  double series_rel_tol = 1e-5;
  SeriesOptions series;
  unsigned workers = 1;
};

/// (sum_{n<=N} lambda(A_n))^2 / sum_{n,m<=N} lambda(A_n ∩ A_m).
/// Throws DegenerateInputError when every A_n is empty.
double borel_cantelli_ratio(u64 N, const ApproxProfile& profile, bool reduced, const ArithTables& tables,
                            MeasureMode mode, const RatioOptions& options = {});

}  // namespace dioph
