#pragma once

// Arithmetic-function layer: sieved tables of Euler's totient, the divisor
// count and the Moebius function, plus Ramanujan sums and the small exact
// identities built on them.

#include <cstdint>
#include <span>
#include <vector>

namespace dioph {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest table limit accepted by build_tables unless the caller raises it.
inline constexpr u64 kDefaultTableCeiling = u64{1} << 25;

/// Natural logarithm with log x := 2 for x <= 1. Keeps log 0, log 1 and
/// nested logs such as log log 2 positive and finite.
double guarded_log(double x) noexcept;

/// Immutable sieve output for 1..limit. Index 0 is unused.
class ArithTables {
 public:
  u64 limit() const noexcept { return limit_; }

  std::uint32_t totient(u64 n) const;
  std::uint32_t divisors(u64 n) const;
  int mobius(u64 n) const;

  /// Primes up to limit, ascending.
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Throws CapacityError when n is 0 or above limit().
  void require(u64 n) const;

 private:
  friend ArithTables build_tables(u64 limit, u64 ceiling);

  u64 limit_ = 0;
  std::vector<std::uint32_t> totient_;
  std::vector<std::uint32_t> divisors_;
  std::vector<std::int8_t> mobius_;
  std::vector<std::uint32_t> primes_;
};

/// Linear sieve filling totient, divisor count and Moebius in one pass.
/// Throws CapacityError when limit is 0 or exceeds ceiling.
ArithTables build_tables(u64 limit, u64 ceiling = kDefaultTableCeiling);

/// c_n(k) by the closed form mu(n/(n,k)) phi(n) / phi(n/(n,k)).
/// c_n(0) = phi(n); negative k folds to |k|.
i64 ramanujan(u64 n, i64 k, const ArithTables& tables);

/// c_n(k) as the exponential sum over reduced residues, in floating point.
/// Intended as an oracle for small n. Throws ConsistencyError when the sum is
/// not within 1e-6 * n of a real integer.
i64 ramanujan_direct(u64 n, i64 k);

/// Sum of e^{2 pi i k a / n} over all residues a: n when n | k, else 0.
i64 full_trig_sum(u64 n, i64 k) noexcept;

/// Exact fraction of machine integers, always reduced with den > 0.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  /// Throws ValidationError on den == 0.
  static Rational make(i64 num, i64 den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Sum with overflow detection; throws CapacityError past 64-bit range.
Rational operator+(const Rational& a, const Rational& b);

/// dtilde(n) = sum over s | n of phi(s)/s, exact.
Rational dtilde(u64 n, const ArithTables& tables);

/// Sum of gcd(n, m) over 1 <= m <= n, by direct summation.
u64 gcd_sum(u64 n);

/// Positive divisors of n in ascending order (trial division).
std::vector<u64> divisors_of(u64 n);

/// Divisor count by trial division up to sqrt(n).
u64 count_divisors(u64 n);

/// Checks d(k)^2 == sum over l | k of d(l^2). The left side counts divisors
/// of k directly; the right side derives d(l^2) from the factorization of l.
bool divisor_square_identity(u64 k);

}  // namespace dioph
