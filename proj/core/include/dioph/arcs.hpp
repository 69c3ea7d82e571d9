#pragma once

// Finite unions of arcs on the circle R/Z and the approximation sets built
// from them.
//
// Canonical form: half-open pieces [lo, hi) with 0 <= lo < hi <= 1, sorted by
// lo, pairwise disjoint, and merged whenever the gap between neighbours is at
// most kMergeTolerance. An arc crossing 1 == 0 is stored as the two pieces
// [lo, 1) and [0, hi). Membership is strict at piece endpoints except at the
// 0 == 1 seam, which is interior when both sides are covered.

#include <span>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/profile.hpp"

namespace dioph {

inline constexpr double kMergeTolerance = 1e-14;

struct Arc {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

class ArcSet {
 public:
  ArcSet() = default;

  /// Sorts, clips to [0, 1], drops empty pieces and merges neighbours.
  static ArcSet canonicalize(std::vector<Arc> pieces);
  static ArcSet full_circle();

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  double total_measure() const noexcept { return total_; }
  bool empty() const noexcept { return arcs_.empty(); }

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  std::vector<Arc> arcs_;
  double total_ = 0.0;
};

/// How arcs leaving [0, 1] are treated: wrapped around the circle, or clipped.
enum class Topology { circle, clipped };

/// A_n (reduced: centers with gcd(m, n) = 1) or the all-fractions variant
/// (reduced = false): arcs of radius f(n)/n around (m + theta(n))/n for
/// m = 1..n. Throws ValidationError when f(n) leaves the profile's range.
ArcSet arcs_for(u64 n, const ApproxProfile& profile, bool reduced, const ArithTables& tables,
                Topology topology = Topology::circle);

/// Same as above from already evaluated f(n) and theta(n).
ArcSet arcs_for(u64 n, double f, double theta, bool reduced, Topology topology = Topology::circle);

double measure(const ArcSet& set) noexcept;

ArcSet intersect(const ArcSet& a, const ArcSet& b);

/// Measure of the union of all sets, by one merged sweep.
double union_measure(std::span<const ArcSet> sets);

/// Whether x (taken mod 1) lies in the set.
bool contains(const ArcSet& set, double x) noexcept;

}  // namespace dioph
