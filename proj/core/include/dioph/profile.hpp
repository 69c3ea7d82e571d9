#pragma once

// Approximation profiles: an approximation function f and a shift theta,
// both sequences over the positive integers. An arc of radius f(n)/n sits
// around each point (m + theta(n))/n.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dioph/arith.hpp"

namespace dioph {

enum class Family { power, constant, table, paper_example, user_file };

/// Declared range of f, checked on every evaluation.
///   standard:  0 <= f(n) <= 1/2
///   extended:  0 <= f(n) < n/2 for n >= 2, 0 <= f(1) <= 1
///   unbounded: 0 <= f(n) < infinity
enum class Range { standard, extended, unbounded };

const char* to_string(Family family) noexcept;
const char* to_string(Range range) noexcept;

/// f(n) = n^(1 - tau), tau > 1. Declared extended.
struct PowerParams {
  double tau = 2.0;
  double theta = 0.0;
};

/// f(n) = value in [0, 1/2].
struct ConstantParams {
  double value = 0.5;
  double theta = 0.0;
};

/// f(n) = log^power(n) / n when n is a multiple of m(k)! with
/// n in [2^k, 2^(k+1)), else 0. m(k) is schedule[k] (the last entry repeats
/// past the end) or min(k, cap) when schedule is empty.
struct PaperExampleParams {
  std::vector<unsigned> schedule;
  unsigned cap = 3;
  double log_power = 10.0;
  double theta = 0.0;
};

struct TableRow {
  u64 n = 0;
  double f = 0.0;
  double theta = 0.0;
};

/// Explicit values; absent n read as f = 0, theta = 0.
struct TableParams {
  std::vector<TableRow> rows;
  Range range = Range::standard;
};

/// Same as TableParams, loaded from a "n f(n) theta(n)" text file.
struct UserFileParams {
  std::filesystem::path path;
  Range range = Range::standard;
};

using ProfileSpec = std::variant<PowerParams, ConstantParams, TableParams, PaperExampleParams, UserFileParams>;

/// Dense copy of a profile over 1..size(); index 0 is unused.
struct ProfileSamples {
  std::vector<double> f;
  std::vector<double> theta;

  u64 size() const noexcept { return f.empty() ? 0 : f.size() - 1; }
  double epsilon(u64 n) const noexcept { return f[n] / static_cast<double>(n); }
};

class ApproxProfile {
 public:
  Family family() const noexcept { return family_; }
  Range range() const noexcept { return range_; }
  const ProfileSpec& spec() const noexcept { return spec_; }
  const std::optional<double>& theta_override() const noexcept { return theta_override_; }

  /// f(n); throws ValidationError when n == 0 or the value leaves the declared range.
  double f(u64 n) const;
  /// theta(n) in [0, 1/2]; throws ValidationError otherwise.
  double theta(u64 n) const;
  double epsilon(u64 n) const { return f(n) / static_cast<double>(n); }

  /// Evaluates 1..count once into dense arrays.
  ProfileSamples tabulate(u64 count) const;

  /// Copy of this profile with theta replaced by a constant.
  ApproxProfile with_theta(double theta) const;

  /// Single-line human description, e.g. "power(tau=3, theta=0)".
  std::string describe() const;

 private:
  friend ApproxProfile make_profile(const ProfileSpec& spec);

  double raw_f(u64 n) const;
  double raw_theta(u64 n) const;
  const TableRow* find_row(u64 n) const;

  Family family_ = Family::constant;
  Range range_ = Range::standard;
  ProfileSpec spec_;
  std::vector<TableRow> rows_;         // table and user-file families
  std::vector<u64> factorials_;        // m! for each schedule entry
  std::optional<double> theta_override_;
};

/// Validates parameters and builds the profile. Throws ValidationError naming
/// the violated constraint.
ApproxProfile make_profile(const ProfileSpec& spec);

/// Parses "n f(n) theta(n)" lines with strictly increasing n. Blank lines and
/// lines starting with '#' are skipped.
std::vector<TableRow> load_profile_table(const std::filesystem::path& path);

/// Whether f is nonincreasing on 1..count.
bool is_nonincreasing(const ApproxProfile& profile, u64 count);

}  // namespace dioph
