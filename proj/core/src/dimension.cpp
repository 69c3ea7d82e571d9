#include "dioph/dimension.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "dioph/arcs.hpp"
#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest alpha with eps >= n^-alpha (meets_exponent), or +inf when none.
double critical_exponent(double eps, u64 n) {
  if (!(eps > 0.0)) return kInf;
  if (n == 1) return eps >= 1.0 - kTieTolerance ? -kInf : kInf;
  return -std::log(eps) / std::log(static_cast<double>(n));
}

}  // namespace

bool meets_exponent(double eps, u64 n, double alpha) noexcept {
  if (!(eps > 0.0)) return false;
  return eps >= std::pow(static_cast<double>(n), -alpha) * (1.0 - kTieTolerance);
}

u64 c_alpha(double alpha, u64 N, const ApproxProfile& profile) {
  if (!(alpha >= 1.0)) throw ValidationError("c_alpha: alpha must be >= 1");
  u64 count = 0;
  for (u64 n = 1; n <= N; ++n) {
    if (meets_exponent(profile.epsilon(n), n, alpha)) ++count;
  }
  return count;
}

std::vector<double> alpha_grid(double from, double to, unsigned steps) {
  if (steps == 0 || !(to >= from) || !(from >= 1.0)) throw ValidationError("alpha_grid: need 1 <= from <= to, steps > 0");
  std::vector<double> grid;
  for (unsigned i = 0; i <= steps; ++i) grid.push_back(from + static_cast<double>(i) * (to - from) / steps);
  return grid;
}

DimensionReport hs_dimension(const ApproxProfile& profile, u64 N_max, std::span<const double> grid,
                             u64 delta_threshold) {
  if (grid.empty()) throw ValidationError("hs_dimension: empty alpha grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 1.0)) throw ValidationError("hs_dimension: alpha values must be >= 1");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("hs_dimension: alpha grid must be ascending");
  }
  if (N_max < 4 || !std::has_single_bit(N_max)) throw ValidationError("hs_dimension: N_max must be a power of 2, >= 4");

  DimensionReport rep;
  rep.profile = profile.describe();
  rep.N_max = N_max;
  rep.delta_threshold = delta_threshold;
  rep.alpha_grid.assign(grid.begin(), grid.end());

  const int top = std::bit_width(N_max) - 1;
  const int bottom = (top + 1) / 2;  // 2^bottom >= sqrt(N_max)
  for (int e = bottom; e <= top; ++e) rep.checkpoints.push_back(u64{1} << e);

  // Critical exponents, bucketed by dyadic block so prefix counts come from
  // sorted blocks instead of one scan per (alpha, N).
  std::vector<std::vector<double>> blocks(top + 1);
  double previous = 0.0;
  bool monotone = true;
  for (u64 n = 1; n <= N_max; ++n) {
    const double f = profile.f(n);
    if (n > 1 && f > previous) monotone = false;
    previous = f;
    blocks[std::bit_width(n) - 1].push_back(critical_exponent(f / static_cast<double>(n), n));
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());

  const auto count_upto = [&](int exponent, double alpha) {
    // n < 2^(exponent+1): blocks 0..exponent
    u64 c = 0;
    const double limit = alpha + kTieTolerance * std::max(1.0, alpha);
    for (int b = 0; b <= exponent; ++b) {
      c += static_cast<u64>(std::upper_bound(blocks[b].begin(), blocks[b].end(), limit) - blocks[b].begin());
    }
    return c;
  };
  // C_alpha(2^e) counts n <= 2^e: blocks 0..e-1 plus n = 2^e itself
  const auto count_at = [&](int e, double alpha) {
    const u64 head = u64{1} << e;
    const double limit = alpha + kTieTolerance * std::max(1.0, alpha);
    const u64 c = e > 0 ? count_upto(e - 1, alpha) : 0;
    return c + (critical_exponent(profile.epsilon(head), head) <= limit ? 1 : 0);
  };

  rep.hs_dimension = 0.0;
  for (double alpha : rep.alpha_grid) {
    std::vector<u64> counts;
    double delta = 0.0;
    for (int e = bottom; e <= top; ++e) {
      const u64 c = count_at(e, alpha);
      counts.push_back(c);
      if (c > 0) delta = std::max(delta, std::log(static_cast<double>(c)) / std::log(static_cast<double>(u64{1} << e)));
    }
    const u64 at_max = counts.back();
    const u64 at_quarter = count_at(top - 2, alpha);
    const bool growing = at_max >= delta_threshold && at_max > at_quarter;
    const double kappa = growing ? (1.0 + delta) / alpha : 0.0;
    rep.c_alpha.push_back(std::move(counts));
    rep.c_alpha_quarter.push_back(at_quarter);
    rep.delta_hat.push_back(delta);
    rep.kappa_hat.push_back(kappa);
    rep.hs_dimension = std::max(rep.hs_dimension, kappa);
  }
  rep.hs_dimension = std::min(1.0, rep.hs_dimension);

  const u64 window_lo = std::max<u64>(2, u64{1} << bottom);
  try {
    rep.lower_order_hat = lower_order(profile, window_lo, N_max);
    if (monotone) rep.closed_form_dimension = std::min(1.0, 2.0 / (*rep.lower_order_hat + 1.0));
  } catch (const DegenerateInputError&) {
    // f vanishes on the window: no lower order to report
  }
  return rep;
}

double lower_order(const ApproxProfile& profile, u64 N_min, u64 N_max) {
  if (N_min < 2 || N_max < N_min) throw ValidationError("lower_order: need 2 <= N_min <= N_max");
  double best = kInf;
  for (u64 n = N_min; n <= N_max; ++n) {
    const double f = profile.f(n);
    if (!(f > 0.0)) continue;
    best = std::min(best, -std::log(f) / std::log(static_cast<double>(n)));
  }
  if (best == kInf) throw DegenerateInputError("lower_order: f vanishes on the window");
  return best;
}

namespace {

struct CellRange {
  i64 first;
  i64 last;
};

u64 count_cells(const std::vector<Arc>& pieces, int j) {
  const double scale = std::ldexp(1.0, j);
  std::vector<CellRange> ranges;
  ranges.reserve(pieces.size());
  for (const auto& a : pieces) {
    // open arc (lo, hi) meets cells floor(lo*2^j) .. ceil(hi*2^j) - 1
    const auto first = static_cast<i64>(std::floor(a.lo * scale));
    const auto last = static_cast<i64>(std::ceil(a.hi * scale)) - 1;
    if (last >= first) ranges.push_back({first, last});
  }
  std::sort(ranges.begin(), ranges.end(), [](const CellRange& x, const CellRange& y) { return x.first < y.first; });
  u64 total = 0;
  i64 cur_first = 0;
  i64 cur_last = -1;
  bool open = false;
  for (const auto& r : ranges) {
    if (open && r.first <= cur_last + 1) {
      cur_last = std::max(cur_last, r.last);
      continue;
    }
    if (open) total += static_cast<u64>(cur_last - cur_first + 1);
    cur_first = r.first;
    cur_last = r.last;
    open = true;
  }
  if (open) total += static_cast<u64>(cur_last - cur_first + 1);
  return total;
}

}  // namespace

BoxCountResult box_count(const ApproxProfile& profile, std::span<const u64> schedule, const ArithTables& tables,
                         const BoxCountOptions& options) {
  if (schedule.size() < 3) throw ValidationError("box_count: need at least 3 schedule points");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 2) throw ValidationError("box_count: schedule entries must be >= 2");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw ValidationError("box_count: schedule must be ascending");
  }
  tables.require(schedule.back());
  const ApproxProfile shifted = options.shift_override ? profile.with_theta(*options.shift_override) : profile;
  const ProfileSamples samples = shifted.tabulate(schedule.back());

  BoxCountResult res;
  res.schedule.assign(schedule.begin(), schedule.end());
  res.reduced = options.reduced;
  res.shift_override = options.shift_override;
  res.window = options.window == BoxWindow::dyadic_block ? "dyadic-block" : "prefix";
  res.resolution.resize(schedule.size());
  res.counts.resize(schedule.size());

  parallel_for(schedule.size(), options.workers, [&](std::size_t i) {
    const u64 N = schedule[i];
    const u64 lo = options.window == BoxWindow::dyadic_block ? N / 2 + 1 : 1;
    std::vector<Arc> pieces;
    double min_radius = kInf;
    for (u64 n = lo; n <= N; ++n) {
      if (!(samples.f[n] > 0.0)) continue;
      min_radius = std::min(min_radius, samples.epsilon(n));
      const ArcSet set = arcs_for(n, samples.f[n], samples.theta[n], options.reduced);
      pieces.insert(pieces.end(), set.arcs().begin(), set.arcs().end());
    }
    int j = 0;
    if (options.resolution_rule) {
      j = options.resolution_rule(N);
    } else if (min_radius < kInf) {
      j = static_cast<int>(std::ceil(-std::log2(min_radius) - 1e-9));
    }
    if (j < 0 || j > 60) throw ValidationError("box_count: resolution j(N) must lie in [0, 60]");
    res.resolution[i] = j;
    res.counts[i] = count_cells(pieces, j);
  });

  // least squares of y = log count against x = j log 2
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (res.counts[i] == 0) continue;
    xs.push_back(res.resolution[i] * std::numbers::ln2);
    ys.push_back(std::log(static_cast<double>(res.counts[i])));
  }
  if (xs.size() < 3) throw DegenerateInputError("box_count: fewer than 3 nonempty scales");
  const double k = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateInputError("box_count: resolutions do not vary across the schedule");
  res.slope = sxy / sxx;
  res.intercept = my - res.slope * mx;
  res.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return res;
}

double box_count_estimate(const ApproxProfile& profile, std::span<const u64> schedule, const ArithTables& tables,
                          const BoxCountOptions& options) {
  return box_count(profile, schedule, tables, options).slope;
}

}  // namespace dioph
