#include "dioph/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "dioph/arcs.hpp"
#include "dioph/error.hpp"

namespace dioph {

namespace {

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

double safe_quotient(double num, double den, bool& degenerate) {
  if (den > 0.0) return num / den;
  degenerate = true;
  return 0.0;
}

std::size_t quarter(std::size_t size) { return std::max<std::size_t>(1, (size + 3) / 4); }

}  // namespace

double lemma1_ratio(u64 k, u64 m, const ArithTables& tables) {
  if (k == 0 || m < 2) throw ValidationError("lemma1_ratio: need k >= 1 and m >= 2");
  tables.require(m);
  double sum = 0.0;
  for (u64 n = 1; n <= m; ++n) {
    const i64 c = ramanujan(n, static_cast<i64>(k), tables);
    sum += static_cast<double>(c < 0 ? -c : c) / tables.totient(n);
  }
  return sum / (static_cast<double>(count_divisors(k)) * guarded_log(static_cast<double>(m)));
}

double lemma2_sum(u64 n, const ArithTables& tables) {
  tables.require(n);
  double sum = 0.0;
  for (u64 k = 1; k <= n; ++k) {
    const double d = tables.divisors(k);
    sum += d * d / static_cast<double>(k);
  }
  return sum;
}

double lemma2_sum_via_identity(u64 n) {
  if (n == 0) throw ValidationError("lemma2_sum_via_identity: n must be positive");
  std::vector<double> harmonic(n + 1, 0.0);
  for (u64 j = 1; j <= n; ++j) harmonic[j] = harmonic[j - 1] + 1.0 / static_cast<double>(j);
  double sum = 0.0;
  for (u64 l = 1; l <= n; ++l) {
    sum += static_cast<double>(divisors_of_square(l)) / static_cast<double>(l) * harmonic[n / l];
  }
  return sum;
}

double lemma2_ratio(u64 n, const ArithTables& tables) {
  if (n < 2) throw ValidationError("lemma2_ratio: n must be >= 2");
  const double l = guarded_log(static_cast<double>(n));
  return lemma2_sum(n, tables) / (l * l * l);
}

std::vector<double> lemma2_ratios(std::span<const u64> checkpoints, const ArithTables& tables) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  double sum = 0.0;
  u64 k = 1;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const u64 n = checkpoints[i];
    if (n < 2 || (i > 0 && n <= checkpoints[i - 1])) {
      throw ValidationError("lemma2_ratios: checkpoints must be ascending and >= 2");
    }
    tables.require(n);
    for (; k <= n; ++k) {
      const double d = tables.divisors(k);
      sum += d * d / static_cast<double>(k);
    }
    const double l = guarded_log(static_cast<double>(n));
    out.push_back(sum / (l * l * l));
  }
  return out;
}

double lemma3_ratio(u64 m, const ArithTables& tables, u64 max_m) {
  if (m < 2) throw ValidationError("lemma3_ratio: m must be >= 2");
  if (m > max_m) throw BudgetError("lemma3_ratio: m exceeds the gcd budget", m);
  tables.require(m);
  u64 sum = 0;
  for (u64 n = 1; n <= m; ++n) sum += static_cast<u64>(tables.divisors(n)) * std::gcd(n, m);
  const double dm = tables.divisors(m);
  return static_cast<double>(sum) * dm / (dm * dm * dm * static_cast<double>(m) * guarded_log(static_cast<double>(m)));
}

double lemma3_ratio_prime(u64 p, const ArithTables& tables) {
  tables.require(p);
  if (p < 2 || tables.divisors(p) != 2) throw ValidationError("lemma3_ratio_prime: p must be prime");
  u64 D = 0;
  for (u64 n = 1; n < p; ++n) D += tables.divisors(n);
  const double pd = static_cast<double>(p);
  return 2.0 * (static_cast<double>(D) + 2.0 * pd) / (8.0 * pd * guarded_log(pd));
}

double mertens_ratio(u64 m, const ArithTables& tables) {
  if (m < 3) throw ValidationError("mertens_ratio: m must be >= 3");
  tables.require(m);
  double product = 1.0;
  for (const auto p : tables.primes()) {
    if (p > m) break;
    product *= static_cast<double>(p) / static_cast<double>(p - 1);
  }
  return product / guarded_log(static_cast<double>(m));
}

TotientScan totient_liminf_scan(u64 lo, u64 hi, const ArithTables& tables) {
  if (lo < 10 || hi < lo) throw ValidationError("totient_liminf_scan: need 10 <= lo <= hi");
  tables.require(hi);
  TotientScan scan;
  scan.min = std::numeric_limits<double>::infinity();
  for (u64 n = lo; n <= hi; ++n) {
    const double nd = static_cast<double>(n);
    const double v = tables.totient(n) * guarded_log(guarded_log(nd)) / nd;
    if (v < scan.min) {
      scan.min = v;
      scan.argmin = n;
    }
  }
  return scan;
}

LevequeCheck leveque_bound_check(u64 n, double f_n, double theta_n, u64 m, double f_m, double theta_m) {
  if (n == 0 || m == 0) throw ValidationError("leveque_bound_check: n and m must be positive");
  if (!(f_n >= 0.0 && f_n <= 0.5 && f_m >= 0.0 && f_m <= 0.5)) {
    throw ValidationError("leveque_bound_check: requires 0 <= f <= 1/2");
  }
  LevequeCheck c;
  c.exact = measure(intersect(arcs_for(n, f_n, theta_n, false), arcs_for(m, f_m, theta_m, false)));
  const double eps = std::min(f_n / static_cast<double>(n), f_m / static_cast<double>(m));
  c.bound = 4.0 * f_n * f_m + 2.0 * static_cast<double>(std::gcd(n, m)) * eps;
  c.holds = c.exact <= c.bound + 1e-12 * std::max(1.0, c.bound);
  return c;
}

LevequeCheck leveque_bound_check(u64 n, u64 m, const ApproxProfile& profile, const ArithTables& tables) {
  tables.require(std::max(n, m));
  return leveque_bound_check(n, profile.f(n), profile.theta(n), m, profile.f(m), profile.theta(m));
}

const char* to_string(CriterionKind kind) noexcept {
  switch (kind) {
    case CriterionKind::thm1_3: return "thm1_3";
    case CriterionKind::cor1_4: return "cor1_4";
    case CriterionKind::thm1_5: return "thm1_5";
    case CriterionKind::thmpo2: return "thmpo2";
    case CriterionKind::thmpo: return "thmpo";
    case CriterionKind::cab: return "cab";
  }
  return "?";
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::diverging_trend: return "diverging-trend";
    case Verdict::bounded_trend: return "bounded-trend";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

CriterionKind parse_criterion_kind(const std::string& name) {
  for (auto k : {CriterionKind::thm1_3, CriterionKind::cor1_4, CriterionKind::thm1_5, CriterionKind::thmpo2,
                 CriterionKind::thmpo, CriterionKind::cab}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("unknown criterion kind '" + name + "'");
}

DimensionFunction power_dimension_function(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw ValidationError("power_dimension_function: need 0 < s <= 1");
  char label[48];
  std::snprintf(label, sizeof label, "x^%.17g", s);
  return {label, [s](double x) { return x > 0.0 ? std::pow(x, s) : 0.0; }};
}

Verdict trend_verdict(std::span<const double> values) {
  if (values.empty()) return Verdict::inconclusive;
  const std::size_t q = quarter(values.size());
  const double first = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(q));
  const double last = *std::max_element(values.end() - static_cast<std::ptrdiff_t>(q), values.end());
  if (first == 0.0 && last == 0.0) return Verdict::bounded_trend;
  if (last >= kDivergingFactor * first) return Verdict::diverging_trend;
  if (last <= kBoundedFactor * first) return Verdict::bounded_trend;
  return Verdict::inconclusive;
}

bool no_upward_trend(std::span<const double> values) {
  if (values.size() < 2) return true;
  const std::size_t q = std::min(quarter(values.size()), values.size() - 1);
  const auto split = values.end() - static_cast<std::ptrdiff_t>(q);
  const double head = *std::max_element(values.begin(), split);
  const double tail = *std::max_element(split, values.end());
  return tail <= kBoundedFactor * head;
}

std::vector<u64> dyadic_checkpoints(unsigned lo, unsigned hi) {
  if (hi < lo || hi > 62) throw ValidationError("dyadic_checkpoints: need lo <= hi <= 62");
  std::vector<u64> out;
  for (unsigned e = lo; e <= hi; ++e) out.push_back(u64{1} << e);
  return out;
}

CriterionTrace criterion_trace(CriterionKind kind, const ApproxProfile& profile, std::span<const u64> checkpoints,
                               const ArithTables& tables, const CriterionParams& params) {
  if (checkpoints.empty()) throw ValidationError("criterion_trace: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw ValidationError("criterion_trace: checkpoints must be positive and strictly ascending");
    }
  }
  if ((kind == CriterionKind::thm1_5) != params.h.has_value()) {
    throw ValidationError("criterion_trace: a dimension function h is required for thm1_5 and only there");
  }
  if ((kind == CriterionKind::cab) != params.a_b.has_value()) {
    throw ValidationError("criterion_trace: (a, b) is required for cab and only there");
  }
  if (params.h && !params.h->h) throw ValidationError("criterion_trace: empty dimension function");
  tables.require(checkpoints.back());

  CriterionTrace t;
  t.kind = kind;
  t.profile = profile.describe();
  t.checkpoints.assign(checkpoints.begin(), checkpoints.end());

  // running sums over n = 1..N
  double s_phi = 0.0;    // sum phi(n) f(n) / n
  double s_f = 0.0;      // sum f(n)
  double s_fd = 0.0;     // sum f(n) d(n)
  double s_fd3 = 0.0;    // sum f(n) d(n)^3 log^2 n
  double s_h = 0.0;      // sum phi(n) h(eps_n)
  double h_max = 0.0;    // max h(eps_n)^{1/2} n (or phi(n))
  bool all_bounded = true;
  const double a = params.a_b ? params.a_b->first : 0.0;
  const double b = params.a_b ? params.a_b->second : 0.0;

  u64 n = 1;
  for (const u64 N : checkpoints) {
    for (; n <= N; ++n) {
      const double f = profile.f(n);
      const double nd = static_cast<double>(n);
      const double phi = tables.totient(n);
      const double d = tables.divisors(n);
      const double lg = guarded_log(nd);
      s_phi += phi * f / nd;
      s_f += f;
      s_fd += f * d;
      s_fd3 += f * d * d * d * lg * lg;
      if (params.h) {
        const double hv = params.h->h(f / nd);
        s_h += phi * hv;
        h_max = std::max(h_max, std::sqrt(hv) * (params.phi_weighted_max ? phi : nd));
      }
      if (kind == CriterionKind::cab) {
        const double limit = params.K * std::pow(lg, a) / nd;
        if (f > limit * (1.0 + 1e-12)) all_bounded = false;
      }
    }
    const double LN = guarded_log(static_cast<double>(N));
    bool degenerate = false;
    double q = 0.0;
    switch (kind) {
      case CriterionKind::thm1_3:
        q = safe_quotient(s_phi, std::sqrt(s_fd3), degenerate);
        break;
      case CriterionKind::cor1_4: {
        const double LLN = guarded_log(LN);
        q = safe_quotient(s_phi, LN * LN * LLN * std::exp(3.0 * std::numbers::ln2 * LN / LLN), degenerate);
        break;
      }
      case CriterionKind::thm1_5:
        q = safe_quotient(s_h, std::pow(LN, 2.5) * h_max, degenerate);
        break;
      case CriterionKind::thmpo2:
        q = safe_quotient(s_f, std::sqrt(s_fd), degenerate);
        break;
      case CriterionKind::thmpo: {
        q = safe_quotient(s_phi, s_f, degenerate);
        bool second_degenerate = false;
        t.secondary.push_back(safe_quotient(s_phi * s_phi, s_fd, second_degenerate));
        degenerate = degenerate || second_degenerate;
        break;
      }
      case CriterionKind::cab:
        q = safe_quotient(s_phi, std::pow(LN, b), degenerate);
        t.bound_ok.push_back(all_bounded);
        break;
    }
    t.quotients.push_back(q);
    t.degenerate.push_back(degenerate);
  }
  t.verdict = trend_verdict(t.quotients);
  return t;
}

}  // namespace dioph
