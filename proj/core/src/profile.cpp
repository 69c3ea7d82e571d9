#include "dioph/profile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::power: return "power";
    case Family::constant: return "constant";
    case Family::table: return "table";
    case Family::paper_example: return "paper-example";
    case Family::user_file: return "user-file";
  }
  return "unknown";
}

const char* to_string(Range range) noexcept {
  switch (range) {
    case Range::standard: return "standard";
    case Range::extended: return "extended";
    case Range::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr unsigned kMaxFactorialArg = 20;  // 20! < 2^64

u64 factorial(unsigned m) {
  u64 r = 1;
  for (unsigned i = 2; i <= m; ++i) r *= i;
  return r;
}

void check_theta(double theta, const char* what) {
  if (!(theta >= 0.0 && theta <= 0.5)) {
    throw ValidationError(std::string(what) + ": theta must lie in [0, 1/2], got " + std::to_string(theta));
  }
}

void check_rows(const std::vector<TableRow>& rows, const std::string& origin) {
  u64 prev = 0;
  for (const auto& row : rows) {
    if (row.n == 0) throw ValidationError(origin + ": n must be positive");
    if (row.n <= prev) {
      throw ValidationError(origin + ": n must be strictly increasing (" + std::to_string(row.n) +
                            " after " + std::to_string(prev) + ")");
    }
    if (!std::isfinite(row.f) || row.f < 0.0) {
      throw ValidationError(origin + ": f(" + std::to_string(row.n) + ") must be finite and >= 0");
    }
    check_theta(row.theta, origin.c_str());
    prev = row.n;
  }
}

}  // namespace

ApproxProfile make_profile(const ProfileSpec& spec) {
  ApproxProfile p;
  p.spec_ = spec;
  std::visit(
      [&p](const auto& params) {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, PowerParams>) {
          if (!(params.tau > 1.0) || !std::isfinite(params.tau)) {
            throw ValidationError("power family: exponent tau must exceed 1, got " + std::to_string(params.tau));
          }
          check_theta(params.theta, "power family");
          p.family_ = Family::power;
          p.range_ = Range::extended;
        } else if constexpr (std::is_same_v<T, ConstantParams>) {
          if (!(params.value >= 0.0 && params.value <= 0.5)) {
            throw ValidationError("constant family: value must lie in [0, 1/2], got " +
                                  std::to_string(params.value));
          }
          check_theta(params.theta, "constant family");
          p.family_ = Family::constant;
          p.range_ = Range::standard;
        } else if constexpr (std::is_same_v<T, PaperExampleParams>) {
          check_theta(params.theta, "paper-example family");
          if (!(params.log_power >= 0.0)) throw ValidationError("paper-example family: log power must be >= 0");
          if (params.schedule.empty()) {
            if (params.cap > kMaxFactorialArg) {
              throw ValidationError("paper-example family: cap must be <= 20 so m(k)! fits in 64 bits");
            }
          }
          for (std::size_t i = 0; i < params.schedule.size(); ++i) {
            if (params.schedule[i] > kMaxFactorialArg) {
              throw ValidationError("paper-example family: schedule values must be <= 20");
            }
            if (i > 0 && params.schedule[i] < params.schedule[i - 1]) {
              throw ValidationError("paper-example family: schedule m(k) must be nondecreasing");
            }
          }
          p.family_ = Family::paper_example;
          p.range_ = Range::unbounded;
          for (unsigned m = 0; m <= kMaxFactorialArg; ++m) p.factorials_.push_back(factorial(m));
        } else if constexpr (std::is_same_v<T, TableParams>) {
          check_rows(params.rows, "table family");
          p.family_ = Family::table;
          p.range_ = params.range;
          p.rows_ = params.rows;
        } else if constexpr (std::is_same_v<T, UserFileParams>) {
          p.family_ = Family::user_file;
          p.range_ = params.range;
          p.rows_ = load_profile_table(params.path);
        }
      },
      spec);
  return p;
}

const TableRow* ApproxProfile::find_row(u64 n) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), n,
                             [](const TableRow& row, u64 key) { return row.n < key; });
  return (it != rows_.end() && it->n == n) ? &*it : nullptr;
}

double ApproxProfile::raw_f(u64 n) const {
  const double x = static_cast<double>(n);
  switch (family_) {
    case Family::power: return std::pow(x, 1.0 - std::get<PowerParams>(spec_).tau);
    case Family::constant: return std::get<ConstantParams>(spec_).value;
    case Family::paper_example: {
      const auto& params = std::get<PaperExampleParams>(spec_);
      const auto k = static_cast<unsigned>(std::bit_width(n) - 1);
      unsigned m = 0;
      if (params.schedule.empty()) {
        m = std::min(k, params.cap);
      } else {
        m = params.schedule[std::min<std::size_t>(k, params.schedule.size() - 1)];
      }
      if (n % factorials_[m] != 0) return 0.0;
      return std::pow(std::log(x), params.log_power) / x;
    }
    case Family::table:
    case Family::user_file: {
      const TableRow* row = find_row(n);
      return row ? row->f : 0.0;
    }
  }
  return 0.0;
}

double ApproxProfile::raw_theta(u64 n) const {
  if (theta_override_) return *theta_override_;
  switch (family_) {
    case Family::power: return std::get<PowerParams>(spec_).theta;
    case Family::constant: return std::get<ConstantParams>(spec_).theta;
    case Family::paper_example: return std::get<PaperExampleParams>(spec_).theta;
    case Family::table:
    case Family::user_file: {
      const TableRow* row = find_row(n);
      return row ? row->theta : 0.0;
    }
  }
  return 0.0;
}

double ApproxProfile::f(u64 n) const {
  if (n == 0) throw ValidationError("profile evaluated at n = 0");
  const double v = raw_f(n);
  bool ok = std::isfinite(v) && v >= 0.0;
  switch (range_) {
    case Range::standard: ok = ok && v <= 0.5; break;
    case Range::extended: ok = ok && (n == 1 ? v <= 1.0 : v < static_cast<double>(n) / 2.0); break;
    case Range::unbounded: break;
  }
  if (!ok) {
    throw ValidationError("f(" + std::to_string(n) + ") = " + std::to_string(v) + " outside the " +
                          to_string(range_) + " range");
  }
  return v;
}

double ApproxProfile::theta(u64 n) const {
  if (n == 0) throw ValidationError("profile evaluated at n = 0");
  const double v = raw_theta(n);
  if (!(v >= 0.0 && v <= 0.5)) {
    throw ValidationError("theta(" + std::to_string(n) + ") = " + std::to_string(v) + " outside [0, 1/2]");
  }
  return v;
}

ProfileSamples ApproxProfile::tabulate(u64 count) const {
  ProfileSamples s;
  s.f.assign(count + 1, 0.0);
  s.theta.assign(count + 1, 0.0);
  for (u64 n = 1; n <= count; ++n) {
    s.f[n] = f(n);
    s.theta[n] = theta(n);
  }
  return s;
}

ApproxProfile ApproxProfile::with_theta(double theta) const {
  check_theta(theta, "theta override");
  ApproxProfile copy = *this;
  copy.theta_override_ = theta;
  return copy;
}

std::string ApproxProfile::describe() const {
  std::ostringstream os;
  os << to_string(family_) << '(';
  std::visit(
      [&os](const auto& params) {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, PowerParams>) {
          os << "tau=" << params.tau << ", theta=" << params.theta;
        } else if constexpr (std::is_same_v<T, ConstantParams>) {
          os << "value=" << params.value << ", theta=" << params.theta;
        } else if constexpr (std::is_same_v<T, PaperExampleParams>) {
          if (params.schedule.empty()) {
            os << "m(k)=min(k," << params.cap << ')';
          } else {
            os << "schedule=[";
            for (std::size_t i = 0; i < params.schedule.size(); ++i) os << (i ? "," : "") << params.schedule[i];
            os << ']';
          }
          os << ", log_power=" << params.log_power << ", theta=" << params.theta;
        } else if constexpr (std::is_same_v<T, TableParams>) {
          os << "rows=" << params.rows.size();
        } else if constexpr (std::is_same_v<T, UserFileParams>) {
          os << "path=" << params.path.string();
        }
      },
      spec_);
  if (theta_override_) os << ", theta_override=" << *theta_override_;
  os << ", range=" << to_string(range_) << ')';
  return os.str();
}

std::vector<TableRow> load_profile_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open profile table " + path.string());
  std::vector<TableRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    TableRow row;
    long long n = 0;
    std::string extra;
    if (!(fields >> n >> row.f >> row.theta) || (fields >> extra)) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected \"n f(n) theta(n)\"");
    }
    if (n <= 0) throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": n must be positive");
    row.n = static_cast<u64>(n);
    rows.push_back(row);
  }
  check_rows(rows, path.string());
  return rows;
}

bool is_nonincreasing(const ApproxProfile& profile, u64 count) {
  double prev = 0.0;
  for (u64 n = 1; n <= count; ++n) {
    const double v = profile.f(n);
    if (n > 1 && v > prev) return false;
    prev = v;
  }
  return true;
}

}  // namespace dioph
