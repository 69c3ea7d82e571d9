#pragma once

// Lemma ratios, classical constants and divergence-criterion traces, all
// evaluated on finite ranges. Logs are guarded (log x := 2 for x <= 1).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/profile.hpp"

namespace dioph {

/// (1 / (d(k) log m)) sum_{n<=m} |c_n(k)| / phi(n).
double lemma1_ratio(u64 k, u64 m, const ArithTables& tables);

/// (sum_{k<=n} d(k)^2 / k) / log^3 n.
double lemma2_ratio(u64 n, const ArithTables& tables);

/// lemma2_ratio at each ascending checkpoint, from one running sum.
std::vector<double> lemma2_ratios(std::span<const u64> checkpoints, const ArithTables& tables);

/// sum_{k<=n} d(k)^2 / k by direct summation.
double lemma2_sum(u64 n, const ArithTables& tables);

/// The same sum regrouped through d(k)^2 = sum_{l|k} d(l^2):
/// sum_{l<=n} d(l^2) / l * H(floor(n / l)), H the harmonic numbers.
double lemma2_sum_via_identity(u64 n);

/// (sum_{n<=m} d(n) d(m) gcd(n, m)) / (d(m)^3 m log m). Throws BudgetError when
/// m exceeds max_m.
double lemma3_ratio(u64 m, const ArithTables& tables, u64 max_m = u64{1} << 24);

/// lemma3_ratio for prime p from 2 (D(p - 1) + 2p) / (8 p log p), D the
/// divisor summatory function. Throws ValidationError when p is not prime.
double lemma3_ratio_prime(u64 p, const ArithTables& tables);

/// (1 / log m) prod_{p<=m} p / (p - 1), tending to e^gamma.
double mertens_ratio(u64 m, const ArithTables& tables);

struct TotientScan {
  u64 argmin = 0;
  double min = 0.0;  // min of phi(n) log log n / n on the window
};

/// Scans n in [lo, hi]. Requires 10 <= lo <= hi.
TotientScan totient_liminf_scan(u64 lo, u64 hi, const ArithTables& tables);

struct LevequeCheck {
  double exact = 0.0;  // lambda of the all-fractions intersection
  double bound = 0.0;  // 4 f(n) f(m) + 2 gcd(n, m) min(eps_n, eps_m)
  bool holds = false;
};

/// Compares the exact all-fractions intersection with the bound. Requires
/// f(n), f(m) <= 1/2. `holds` allows a slack of 1e-12 for the arc sweep.
LevequeCheck leveque_bound_check(u64 n, u64 m, const ApproxProfile& profile, const ArithTables& tables);
LevequeCheck leveque_bound_check(u64 n, double f_n, double theta_n, u64 m, double f_m, double theta_m);

enum class CriterionKind { thm1_3, cor1_4, thm1_5, thmpo2, thmpo, cab };
enum class Verdict { diverging_trend, bounded_trend, inconclusive };

const char* to_string(CriterionKind kind) noexcept;
const char* to_string(Verdict verdict) noexcept;
/// Parses the names produced by to_string; throws ValidationError otherwise.
CriterionKind parse_criterion_kind(const std::string& name);

/// Dimension function for thm1_5.
struct DimensionFunction {
  std::string label;
  std::function<double(double)> h;
};

/// h(x) = x^s.
DimensionFunction power_dimension_function(double s);

struct CriterionParams {
  std::optional<DimensionFunction> h;          // thm1_5 only
  std::optional<std::pair<double, double>> a_b;  // cab only
  double K = 1.0;                              // cab upper-bound constant
  bool phi_weighted_max = false;               // thm1_5: phi(n) instead of n in the max
};

/// Divergence ratios at or above this factor read as diverging.
inline constexpr double kDivergingFactor = 1.5;
/// Ratios at or below this factor read as bounded.
inline constexpr double kBoundedFactor = 1.1;

struct CriterionTrace {
  CriterionKind kind = CriterionKind::thm1_3;
  std::string profile;
  std::vector<u64> checkpoints;
  std::vector<double> quotients;
  std::vector<double> secondary;   // thmpo: the (**) quotient
  std::vector<bool> degenerate;    // 0/0 reported as 0
  std::vector<bool> bound_ok;      // cab: f(n) <= K log^a n / n for all n <= N
  Verdict verdict = Verdict::inconclusive;
};

/// Partial quotients of the criterion at ascending checkpoints. Throws
/// ValidationError when h is missing for thm1_5 or (a, b) for cab, or when
/// either is given to a kind that does not use it.
CriterionTrace criterion_trace(CriterionKind kind, const ApproxProfile& profile, std::span<const u64> checkpoints,
                               const ArithTables& tables, const CriterionParams& params = {});

/// Compares the max over the last quarter of the values with the max over the
/// first quarter (quarters rounded up): >= 1.5x diverging, <= 1.1x bounded,
/// otherwise inconclusive. All-zero data is bounded.
Verdict trend_verdict(std::span<const double> values);

/// Whether the last-quarter max is <= 1.1x the max over the preceding values.
bool no_upward_trend(std::span<const double> values);

/// 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<u64> dyadic_checkpoints(unsigned lo, unsigned hi);

}  // namespace dioph
