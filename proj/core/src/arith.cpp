#include "dioph/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "dioph/error.hpp"

namespace dioph {

namespace {
__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
}  // namespace

double guarded_log(double x) noexcept { return x <= 1.0 ? 2.0 : std::log(x); }

void ArithTables::require(u64 n) const {
  if (n == 0 || n > limit_) {
    throw CapacityError("index " + std::to_string(n) + " outside arithmetic tables [1, " +
                        std::to_string(limit_) + "]");
  }
}

std::uint32_t ArithTables::totient(u64 n) const {
  require(n);
  return totient_[n];
}

std::uint32_t ArithTables::divisors(u64 n) const {
  require(n);
  return divisors_[n];
}

int ArithTables::mobius(u64 n) const {
  require(n);
  return mobius_[n];
}

ArithTables build_tables(u64 limit, u64 ceiling) {
  if (limit == 0) throw CapacityError("table limit must be at least 1");
  if (limit > ceiling) {
    throw CapacityError("table limit " + std::to_string(limit) + " exceeds ceiling " +
                        std::to_string(ceiling));
  }
  if (limit >= (u64{1} << 32)) throw CapacityError("table limit must fit in 32 bits");

  ArithTables t;
  t.limit_ = limit;
  t.totient_.assign(limit + 1, 0);
  t.divisors_.assign(limit + 1, 0);
  t.mobius_.assign(limit + 1, 0);
  // exponent of the smallest prime factor, needed to update d(n)
  std::vector<std::uint8_t> low_exp(limit + 1, 0);

  t.totient_[1] = 1;
  t.divisors_[1] = 1;
  t.mobius_[1] = 1;
  for (u64 i = 2; i <= limit; ++i) {
    if (t.divisors_[i] == 0) {
      t.primes_.push_back(static_cast<std::uint32_t>(i));
      t.totient_[i] = static_cast<std::uint32_t>(i - 1);
      t.divisors_[i] = 2;
      t.mobius_[i] = -1;
      low_exp[i] = 1;
    }
    for (std::uint32_t p : t.primes_) {
      const u64 ip = i * p;
      if (ip > limit) break;
      if (i % p == 0) {
        t.totient_[ip] = t.totient_[i] * p;
        t.mobius_[ip] = 0;
        low_exp[ip] = static_cast<std::uint8_t>(low_exp[i] + 1);
        t.divisors_[ip] = t.divisors_[i] / (low_exp[i] + 1u) * (low_exp[i] + 2u);
        break;
      }
      t.totient_[ip] = t.totient_[i] * (p - 1);
      t.mobius_[ip] = static_cast<std::int8_t>(-t.mobius_[i]);
      low_exp[ip] = 1;
      t.divisors_[ip] = t.divisors_[i] * 2;
    }
  }
  return t;
}

namespace {

u64 magnitude(i64 k) noexcept {
  return k < 0 ? u64{0} - static_cast<u64>(k) : static_cast<u64>(k);
}

}  // namespace

i64 ramanujan(u64 n, i64 k, const ArithTables& tables) {
  tables.require(n);
  const u64 g = std::gcd(n, magnitude(k));  // gcd(n, 0) = n
  const u64 q = n / g;
  const int mu = tables.mobius(q);
  if (mu == 0) return 0;
  return mu * static_cast<i64>(tables.totient(n) / tables.totient(q));
}

i64 ramanujan_direct(u64 n, i64 k) {
  if (n == 0) throw ValidationError("ramanujan_direct: n must be positive");
  const u64 kr = magnitude(k) % n;
  double re = 0.0;
  double im = 0.0;
  for (u64 a = 1; a <= n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    // reduce a*k mod n in integers before going to floating point
    const u64 phase = static_cast<u64>((static_cast<u128>(a) * kr) % n);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  const double nearest = std::round(re);
  const double tol = 1e-6 * static_cast<double>(n);
  if (std::abs(im) >= tol || std::abs(re - nearest) >= tol) {
    throw ConsistencyError("ramanujan_direct(" + std::to_string(n) + ", " + std::to_string(k) +
                           ") is not a real integer: " + std::to_string(re) + " + " +
                           std::to_string(im) + "i");
  }
  return static_cast<i64>(nearest);
}

i64 full_trig_sum(u64 n, i64 k) noexcept {
  if (n == 0) return 0;
  return magnitude(k) % n == 0 ? static_cast<i64>(n) : 0;
}

Rational Rational::make(i64 num, i64 den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

Rational operator+(const Rational& a, const Rational& b) {
  const i64 g = std::gcd(a.den, b.den);
  const i128 den = static_cast<i128>(a.den / g) * b.den;
  const i128 num = static_cast<i128>(a.num) * (b.den / g) + static_cast<i128>(b.num) * (a.den / g);
  constexpr i128 kMax = static_cast<i128>(INT64_MAX);
  if (den > kMax || num > kMax || num < -kMax) throw CapacityError("rational sum overflows 64-bit range");
  return Rational::make(static_cast<i64>(num), static_cast<i64>(den));
}

std::vector<u64> divisors_of(u64 n) {
  std::vector<u64> low;
  std::vector<u64> high;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

u64 count_divisors(u64 n) {
  u64 count = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  }
  return count;
}

Rational dtilde(u64 n, const ArithTables& tables) {
  tables.require(n);
  Rational sum{0, 1};
  for (u64 s : divisors_of(n)) {
    sum = sum + Rational::make(tables.totient(s), static_cast<i64>(s));
  }
  return sum;
}

u64 gcd_sum(u64 n) {
  u64 sum = 0;
  for (u64 m = 1; m <= n; ++m) sum += std::gcd(n, m);
  return sum;
}

namespace {

// d(l^2) from the factorization of l: product of (2a + 1).
u64 divisors_of_square(u64 l) {
  u64 result = 1;
  for (u64 p = 2; p * p <= l; ++p) {
    u64 a = 0;
    while (l % p == 0) {
      l /= p;
      ++a;
    }
    result *= 2 * a + 1;
  }
  if (l > 1) result *= 3;
  return result;
}

}  // namespace

bool divisor_square_identity(u64 k) {
  if (k == 0) throw ValidationError("divisor_square_identity: k must be positive");
  const u64 dk = count_divisors(k);
  u64 rhs = 0;
  for (u64 l : divisors_of(k)) rhs += divisors_of_square(l);
  return dk * dk == rhs;
}

}  // namespace dioph
