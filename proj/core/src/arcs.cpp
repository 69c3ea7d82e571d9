#include "dioph/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dioph/error.hpp"

namespace dioph {

ArcSet ArcSet::canonicalize(std::vector<Arc> pieces) {
  for (auto& a : pieces) {
    a.lo = std::clamp(a.lo, 0.0, 1.0);
    a.hi = std::clamp(a.hi, 0.0, 1.0);
  }
  std::erase_if(pieces, [](const Arc& a) { return !(a.hi > a.lo); });
  std::sort(pieces.begin(), pieces.end(), [](const Arc& x, const Arc& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });

  ArcSet out;
  for (const auto& a : pieces) {
    if (!out.arcs_.empty() && a.lo <= out.arcs_.back().hi + kMergeTolerance) {
      out.arcs_.back().hi = std::max(out.arcs_.back().hi, a.hi);
    } else {
      out.arcs_.push_back(a);
    }
  }
  for (const auto& a : out.arcs_) out.total_ += a.length();
  return out;
}

ArcSet ArcSet::full_circle() { return canonicalize({Arc{0.0, 1.0}}); }

ArcSet arcs_for(u64 n, double f, double theta, bool reduced, Topology topology) {
  if (n == 0) throw ValidationError("arcs_for: n must be positive");
  const double nd = static_cast<double>(n);
  const double radius = f / nd;
  if (!(radius > 0.0)) return {};
  if (topology == Topology::circle && 2.0 * radius >= 1.0) return ArcSet::full_circle();

  std::vector<Arc> pieces;
  pieces.reserve(reduced ? n : n + 1);
  for (u64 m = 1; m <= n; ++m) {
    if (reduced && std::gcd(m, n) != 1) continue;
    const double center = (static_cast<double>(m) + theta) / nd;
    double lo = center - radius;
    double hi = center + radius;
    if (topology == Topology::clipped) {
      pieces.push_back({lo, hi});
      continue;
    }
    const double shift = std::floor(lo);
    lo -= shift;
    hi -= shift;
    if (hi > 1.0) {
      pieces.push_back({lo, 1.0});
      pieces.push_back({0.0, hi - 1.0});
    } else {
      pieces.push_back({lo, hi});
    }
  }
  return ArcSet::canonicalize(std::move(pieces));
}

ArcSet arcs_for(u64 n, const ApproxProfile& profile, bool reduced, const ArithTables& tables, Topology topology) {
  tables.require(n);
  return arcs_for(n, profile.f(n), profile.theta(n), reduced, topology);
}

double measure(const ArcSet& set) noexcept { return set.total_measure(); }

ArcSet intersect(const ArcSet& a, const ArcSet& b) {
  const auto xs = a.arcs();
  const auto ys = b.arcs();
  std::vector<Arc> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double lo = std::max(xs[i].lo, ys[j].lo);
    const double hi = std::min(xs[i].hi, ys[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return ArcSet::canonicalize(std::move(out));
}

double union_measure(std::span<const ArcSet> sets) {
  std::vector<Arc> all;
  for (const auto& s : sets) all.insert(all.end(), s.arcs().begin(), s.arcs().end());
  return ArcSet::canonicalize(std::move(all)).total_measure();
}

bool contains(const ArcSet& set, double x) noexcept {
  if (set.empty() || !std::isfinite(x)) return false;
  const double y = x - std::floor(x);
  const auto arcs = set.arcs();
  if (y == 0.0) return arcs.front().lo == 0.0 && arcs.back().hi == 1.0;
  // last piece with lo < y
  auto it = std::partition_point(arcs.begin(), arcs.end(), [y](const Arc& a) { return a.lo < y; });
  if (it == arcs.begin()) return false;
  --it;
  return y < it->hi;
}

}  // namespace dioph
