#include "dioph/fourier.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "dioph/arcs.hpp"
#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeriesScale = 2.0 / (std::numbers::pi * std::numbers::pi);
constexpr u64 kResyncInterval = 512;

// Neumaier compensated accumulator.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

// Unit phasor e^{2 pi i freq k}, advanced one k at a time and re-derived
// from the exact angle every kResyncInterval steps.
struct Phasor {
  double freq;
  double step_re;
  double step_im;
  double re = 1.0;
  double im = 0.0;

  explicit Phasor(double f) : freq(f), step_re(std::cos(kTwoPi * f)), step_im(std::sin(kTwoPi * f)) {}

  void advance(u64 k) noexcept {
    if (k % kResyncInterval == 0) {
      const double turns = freq * static_cast<double>(k);
      const double angle = kTwoPi * (turns - std::floor(turns));
      re = std::cos(angle);
      im = std::sin(angle);
      return;
    }
    const double r = re * step_re - im * step_im;
    im = re * step_im + im * step_re;
    re = r;
  }
};

std::vector<double> periodic_weights(u64 n, bool full, const ArithTables& tables) {
  std::vector<double> w(n);
  for (u64 r = 0; r < n; ++r) {
    w[r] = full ? static_cast<double>(full_trig_sum(n, static_cast<i64>(r)))
                : static_cast<double>(ramanujan(n, static_cast<i64>(r), tables));
  }
  return w;
}

// Mean of |w_n(k) w_m(k)| over one period lcm(n, m).
double mean_weight_product(const std::vector<double>& wn, const std::vector<double>& wm, u64 period) {
  const u64 n = wn.size();
  const u64 m = wm.size();
  u64 in = 0;
  u64 im = 0;
  double sum = 0.0;
  for (u64 k = 0; k < period; ++k) {
    sum += std::abs(wn[in] * wm[im]);
    if (++in == n) in = 0;
    if (++im == m) im = 0;
  }
  return sum / static_cast<double>(period);
}

u64 least_m_uniform(double amplitude, double tol) {
  const double raw = std::ceil(amplitude / tol);
  return raw < 1.0 ? 1 : static_cast<u64>(std::min(raw, 1.8e19));
}

u64 least_m_periodic(double amplitude, double period, double tol) {
  const auto bound = [&](double M) { return amplitude * (1.0 / M + period / (M * M)); };
  double M = std::ceil((amplitude + std::sqrt(amplitude * amplitude + 4.0 * tol * amplitude * period)) / (2.0 * tol));
  if (M < 1.0) M = 1.0;
  while (M > 1.0 && bound(M - 1.0) <= tol) M -= 1.0;
  while (bound(M) > tol) M += 1.0;
  return static_cast<u64>(std::min(M, 1.8e19));
}

}  // namespace

const char* to_string(TailRule rule) noexcept {
  return rule == TailRule::uniform ? "uniform" : "periodic";
}

std::complex<double> coefficient(u64 n, i64 k, const ApproxProfile& profile, const ArithTables& tables) {
  tables.require(n);
  const double nd = static_cast<double>(n);
  const double eps = profile.f(n) / nd;
  if (k == 0) return {2.0 * eps * tables.totient(n), 0.0};
  const double kd = static_cast<double>(k);
  const double amplitude = std::sin(kTwoPi * eps * kd) * static_cast<double>(ramanujan(n, k, tables)) /
                           (std::numbers::pi * kd);
  return std::polar(1.0, kTwoPi * profile.theta(n) * kd / nd) * amplitude;
}

SeriesResult intersection_series(u64 n, double f_n, double theta_n, u64 m, double f_m, double theta_m, double tol,
                                 const ArithTables& tables, const SeriesOptions& options) {
  tables.require(n);
  tables.require(m);
  if (!(tol > 0.0)) throw ValidationError("intersection_series: tol must be positive");
  if (!(f_n >= 0.0 && f_n <= 0.5 && f_m >= 0.0 && f_m <= 0.5)) {
    throw ValidationError("intersection_series: requires 0 <= f(n), f(m) <= 1/2");
  }

  const bool full = options.full_fractions;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double eps_n = f_n / nd;
  const double eps_m = f_m / md;
  const double count_n = full ? nd : static_cast<double>(tables.totient(n));
  const double count_m = full ? md : static_cast<double>(tables.totient(m));

  SeriesResult result;
  result.tail_rule = options.tail_rule;
  if (eps_n == 0.0 || eps_m == 0.0) return result;  // A_n or A_m empty: every term vanishes

  const u64 period = std::lcm(n, m);
  const auto wn = periodic_weights(n, full, tables);
  const auto wm = periodic_weights(m, full, tables);

  u64 M = 0;
  if (options.tail_rule == TailRule::periodic && (full || period <= options.max_period_scan)) {
    const double mean = full ? static_cast<double>(std::gcd(n, m)) : mean_weight_product(wn, wm, period);
    M = least_m_periodic(kSeriesScale * mean, static_cast<double>(period), tol);
    const double Md = static_cast<double>(M);
    result.tail_bound = kSeriesScale * mean * (1.0 / Md + static_cast<double>(period) / (Md * Md));
  } else {
    result.tail_rule = TailRule::uniform;
    M = least_m_uniform(kSeriesScale * count_n * count_m, tol);
    result.tail_bound = kSeriesScale * count_n * count_m / static_cast<double>(M);
  }
  if (M > options.term_budget) {
    throw BudgetError("intersection_series(" + std::to_string(n) + ", " + std::to_string(m) + ") needs M = " +
                          std::to_string(M) + " terms, budget " + std::to_string(options.term_budget),
                      M);
  }
  result.truncation_M = M;

  Compensated parts[2];
  if (full) {
    // only multiples of lcm(n, m) contribute
    Phasor pn(eps_n * static_cast<double>(period));
    Phasor pm(eps_m * static_cast<double>(period));
    Phasor pd((theta_n / nd - theta_m / md) * static_cast<double>(period));
    const double weight = nd * md;
    for (u64 j = 1; j <= M / period; ++j) {
      pn.advance(j);
      pm.advance(j);
      pd.advance(j);
      const double k = static_cast<double>(j * period);
      parts[(j * period) & 1].add(pn.im * pm.im * pd.re * weight / (k * k));
    }
  } else {
    Phasor pn(eps_n);
    Phasor pm(eps_m);
    Phasor pd(theta_n / nd - theta_m / md);
    u64 in = 0;
    u64 im = 0;
    for (u64 k = 1; k <= M; ++k) {
      pn.advance(k);
      pm.advance(k);
      pd.advance(k);
      if (++in == n) in = 0;
      if (++im == m) im = 0;
      const double w = wn[in] * wm[im];
      if (w == 0.0) continue;
      const double kd = static_cast<double>(k);
      parts[k & 1].add(pn.im * pm.im * pd.re * w / (kd * kd));
    }
  }

  result.terms_even_odd_split.even = kSeriesScale * parts[0].value();
  result.terms_even_odd_split.odd = kSeriesScale * parts[1].value();
  result.value = 4.0 * eps_n * eps_m * count_n * count_m +
                 kSeriesScale * (parts[0].value() + parts[1].value());
  return result;
}

SeriesResult intersection_series(u64 n, u64 m, const ApproxProfile& profile, double tol, const ArithTables& tables,
                                 const SeriesOptions& options) {
  return intersection_series(n, profile.f(n), profile.theta(n), m, profile.f(m), profile.theta(m), tol, tables,
                             options);
}

double analytic_truncation_point(u64 n, u64 m, const ArithTables& tables) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return static_cast<double>(tables.divisors(n)) * tables.divisors(m) * static_cast<double>(std::gcd(n, m)) *
         std::pow(nd, 4) * std::pow(md, 4);
}

double moment_sum(u64 N, const ApproxProfile& profile, const ArithTables& tables) {
  tables.require(N);
  double sum = 0.0;
  for (u64 n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    const double d = tables.divisors(n);
    const double log_n = guarded_log(nd);
    sum += profile.epsilon(n) * nd * d * d * d * log_n * log_n;
  }
  return sum;
}

double second_moment_bound(u64 N, const ApproxProfile& profile, const ArithTables& tables) {
  return moment_sum(N, profile, tables);
}

namespace {

double intersection_measure(const ArcSet& a, const ArcSet& b) noexcept {
  const auto xs = a.arcs();
  const auto ys = b.arcs();
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double lo = std::max(xs[i].lo, ys[j].lo);
    const double hi = std::min(xs[i].hi, ys[j].hi);
    if (hi > lo) total += hi - lo;
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

}  // namespace

double borel_cantelli_ratio(u64 N, const ApproxProfile& profile, bool reduced, const ArithTables& tables,
                            MeasureMode mode, const RatioOptions& options) {
  if (N == 0) throw ValidationError("borel_cantelli_ratio: N must be positive");
  tables.require(N);
  if (N > options.pair_budget / N) {
    throw BudgetError("borel_cantelli_ratio: N^2 = " + std::to_string(N) + "^2 pairs exceeds budget " +
                          std::to_string(options.pair_budget),
                      N * N);
  }
  const ProfileSamples samples = profile.tabulate(N);

  std::vector<double> single(N + 1, 0.0);
  std::vector<ArcSet> sets;
  if (mode == MeasureMode::exact) {
    sets.resize(N + 1);
    for (u64 n = 1; n <= N; ++n) {
      sets[n] = arcs_for(n, samples.f[n], samples.theta[n], reduced);
      single[n] = measure(sets[n]);
    }
  } else {
    for (u64 n = 1; n <= N; ++n) {
      if (samples.f[n] > 0.5) throw ValidationError("borel_cantelli_ratio: series mode requires f(n) <= 1/2");
      single[n] = 2.0 * samples.epsilon(n) * (reduced ? tables.totient(n) : static_cast<double>(n));
    }
  }
  double first_moment = 0.0;
  for (u64 n = 1; n <= N; ++n) first_moment += single[n];
  const double numerator = first_moment * first_moment;
  if (numerator == 0.0) throw DegenerateInputError("borel_cantelli_ratio: all sets are empty (0/0)");

  SeriesOptions series = options.series;
  series.full_fractions = !reduced;
  const double pair_tol = options.series_rel_tol * numerator / (static_cast<double>(N) * static_cast<double>(N));

  // row n holds lambda(A_n ∩ A_n) + 2 sum_{m>n} lambda(A_n ∩ A_m)
  std::vector<double> rows(N + 1, 0.0);
  parallel_for(N, options.workers, [&](std::size_t idx) {
    const u64 n = idx + 1;
    Compensated row;
    for (u64 m = n; m <= N; ++m) {
      double value = 0.0;
      if (mode == MeasureMode::exact) {
        value = intersection_measure(sets[n], sets[m]);
      } else {
        value = intersection_series(n, samples.f[n], samples.theta[n], m, samples.f[m], samples.theta[m], pair_tol,
                                    tables, series)
                    .value;
      }
      row.add(m == n ? value : 2.0 * value);
    }
    rows[n] = row.value();
  });
  Compensated denominator;
  for (u64 n = 1; n <= N; ++n) denominator.add(rows[n]);
  if (!(denominator.value() > 0.0)) throw DegenerateInputError("borel_cantelli_ratio: zero pair sum");
  return numerator / denominator.value();
}

}  // namespace dioph
