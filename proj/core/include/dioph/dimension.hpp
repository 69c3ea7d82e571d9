#pragma once

// Finite-data dimension estimates for the limsup set of the approximation
// sets: the counting-exponent formula driven by
//   C_alpha(N) = #{n <= N : f(n)/n >= n^-alpha},
// the closed form min{1, 2/(lambda + 1)} for nonincreasing f with lower order
// lambda, and a dyadic box count. All of these are estimators on truncations
// and are labelled as such in their reports.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/profile.hpp"

namespace dioph {

/// Whether eps >= n^-alpha, with ties within a relative 1e-12 counted as met.
bool meets_exponent(double eps, u64 n, double alpha) noexcept;

/// C_alpha(N) by direct scan.
u64 c_alpha(double alpha, u64 N, const ApproxProfile& profile);

/// Evenly spaced grid from..to (inclusive) in `steps` intervals, computed as
/// from + i * (to - from) / steps.
std::vector<double> alpha_grid(double from, double to, unsigned steps);

struct BoxCountResult {
  std::vector<u64> schedule;
  std::vector<int> resolution;  // j(N): cells have side 2^-j
  std::vector<u64> counts;      // cells meeting the union at each N
  double slope = 0.0;           // least-squares slope of log count against j log 2
  double intercept = 0.0;
  double r_squared = 0.0;
  bool reduced = true;
  std::optional<double> shift_override;
  std::string window;           // "dyadic-block" or "prefix"
};

struct DimensionReport {
  std::string profile;
  u64 N_max = 0;
  u64 delta_threshold = 16;
  std::vector<double> alpha_grid;
  std::vector<u64> checkpoints;                 // dyadic N in [sqrt(N_max), N_max]
  std::vector<std::vector<u64>> c_alpha;        // [alpha index][checkpoint index]
  std::vector<u64> c_alpha_quarter;             // C_alpha(N_max / 4) per alpha
  std::vector<double> delta_hat;
  std::vector<double> kappa_hat;
  double hs_dimension = 0.0;
  std::optional<double> lower_order_hat;
  std::optional<double> closed_form_dimension;  // set when f is nonincreasing up to N_max
  std::optional<BoxCountResult> box_count;
};

/// delta_hat(alpha) = max over checkpoints of log C_alpha(N) / log N;
/// kappa_hat(alpha) = (1 + delta_hat) / alpha when C_alpha(N_max) >= delta_threshold
/// and C_alpha(N_max) > C_alpha(N_max / 4), else 0;
/// hs_dimension = min{1, max kappa_hat}.
/// Requires a nonempty ascending grid with entries >= 1 and N_max a power of two >= 4.
DimensionReport hs_dimension(const ApproxProfile& profile, u64 N_max, std::span<const double> alpha_grid,
                             u64 delta_threshold = 16);

/// min over n in [N_min, N_max] with f(n) > 0 of -log f(n) / log n.
/// Throws DegenerateInputError when f vanishes on the window.
double lower_order(const ApproxProfile& profile, u64 N_min, u64 N_max);

/// Which denominators feed the box count at scale N.
enum class BoxWindow {
  dyadic_block,  // N/2 < n <= N: the fresh arcs at scale N
  prefix,        // 1 <= n <= N: the whole truncation union
};

struct BoxCountOptions {
  std::optional<double> shift_override;
  bool reduced = true;
  BoxWindow window = BoxWindow::dyadic_block;
  /// N -> j(N). Empty: j(N) = ceil(-log2 r_min(N)) with r_min the smallest
  /// positive arc radius in the window.
  std::function<int(u64)> resolution_rule;
  unsigned workers = 1;
};

/// Dyadic cell counts over the schedule and their log-log slope.
/// Throws ValidationError for fewer than 3 points or a non-ascending schedule.
BoxCountResult box_count(const ApproxProfile& profile, std::span<const u64> N_schedule, const ArithTables& tables,
                         const BoxCountOptions& options = {});

/// The slope of box_count.
double box_count_estimate(const ApproxProfile& profile, std::span<const u64> N_schedule, const ArithTables& tables,
                          const BoxCountOptions& options = {});

}  // namespace dioph
