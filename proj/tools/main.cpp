#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dioph/arcs.hpp"
#include "dioph/counting.hpp"
#include "dioph/criteria.hpp"
#include "dioph/dimension.hpp"
#include "dioph/error.hpp"
#include "dioph/fourier.hpp"
#include "dioph/io.hpp"
#include "dioph/parallel.hpp"
#include "run_context.hpp"

namespace {

using namespace dioph;
using cli::RunContext;
using nlohmann::ordered_json;

struct ProfileOptions {
  std::string family = "constant";
  double tau = 2.0;
  double value = 0.5;
  double theta = 0.0;
  std::vector<unsigned> schedule;
  unsigned cap = 3;
  double log_power = 10.0;
  std::string table;
  std::string range = "standard";
};

struct GlobalOptions {
  std::string out = "out";
  u64 seed = 0;
  unsigned workers = 1;
  u64 table_ceiling = kDefaultTableCeiling;
  u64 term_budget = SeriesOptions{}.term_budget;
  u64 pair_budget = RatioOptions{}.pair_budget;
  ProfileOptions profile;
};

struct SieveOptions {
  u64 limit = 1'000'000;
  bool dump = false;
};

struct MeasureOptions {
  u64 from = 1;
  u64 to = 100;
  bool full = false;
  bool clipped = false;
};

struct IntersectOptions {
  u64 n = 0;
  u64 m = 0;
  u64 upto = 0;
  double tol = 1e-6;
  std::string tail_rule = "periodic";
  bool full = false;
  u64 bc_ratio = 0;
  std::string mode = "exact";
  double series_rel_tol = RatioOptions{}.series_rel_tol;
};

struct CountOptions {
  u64 N = 100'000;
  u64 samples = 200;
  std::optional<double> x;
  std::optional<double> beta;
};

struct DimensionOptions {
  u64 N_max = u64{1} << 20;
  double alpha_from = 1.0;
  double alpha_to = 6.0;
  unsigned alpha_steps = 100;
  u64 delta_threshold = 16;
  unsigned box_lo = 6;
  unsigned box_hi = 12;
  std::optional<double> box_shift;
  bool box_full = false;
  std::string box_window = "dyadic-block";
  bool no_box = false;
};

struct CriteriaOptions {
  std::string kind = "thm1_3";
  unsigned lo = 4;
  unsigned hi = 20;
  std::optional<double> h_power;
  std::optional<double> a;
  std::optional<double> b;
  double K = 1.0;
  bool phi_weighted = false;
};

struct BoundsOptions {
  u64 lemma1_k_max = 100;
  std::vector<u64> lemma1_m{100, 1000, 10000};
  unsigned lemma2_lo = 4;
  unsigned lemma2_hi = 20;
  u64 lemma3_max = 10'000;
  unsigned mertens_lo = 2;
  unsigned mertens_hi = 20;
  u64 mertens_at = 1'000'000;
  u64 totient_lo = 10;
  u64 totient_hi = 1'000'000;
};

// ---------------------------------------------------------------- validation

void check(std::vector<std::string>& problems, bool ok, const std::string& message) {
  if (!ok) problems.push_back(message);
}

std::optional<ApproxProfile> build_profile(const ProfileOptions& p, std::vector<std::string>& problems) {
  std::optional<Range> range;
  for (auto r : {Range::standard, Range::extended, Range::unbounded}) {
    if (p.range == to_string(r)) range = r;
  }
  check(problems, range.has_value(), "range: expected standard, extended or unbounded, got '" + p.range + "'");
  ProfileSpec spec;
  if (p.family == "power") {
    spec = PowerParams{p.tau, p.theta};
  } else if (p.family == "constant") {
    spec = ConstantParams{p.value, p.theta};
  } else if (p.family == "paper-example") {
    spec = PaperExampleParams{p.schedule, p.cap, p.log_power, p.theta};
  } else if (p.family == "table") {
    check(problems, !p.table.empty(), "profile table: --table is required");
    if (p.table.empty() || !range) return std::nullopt;
    spec = UserFileParams{p.table, *range};
  } else {
    problems.push_back("profile: unknown family '" + p.family + "'");
    return std::nullopt;
  }
  try {
    return make_profile(spec);
  } catch (const Error& e) {
    problems.push_back(e.what());
    return std::nullopt;
  }
}

ordered_json profile_json(const ProfileOptions& p) {
  ordered_json j;
  j["family"] = p.family;
  if (p.family == "power") j["tau"] = p.tau;
  if (p.family == "constant") j["value"] = p.value;
  if (p.family == "paper-example") {
    j["schedule"] = p.schedule;
    j["cap"] = p.cap;
    j["log_power"] = p.log_power;
  }
  if (p.family == "table") {
    j["table"] = p.table;
    j["range"] = p.range;
  } else {
    j["theta"] = p.theta;
  }
  return j;
}

ArithTables tables_for(u64 limit, const GlobalOptions& g) { return build_tables(std::max<u64>(limit, 16), g.table_ceiling); }

// ---------------------------------------------------------------- commands

void run_sieve(RunContext& ctx, const GlobalOptions& g, const SieveOptions& o) {
  const auto tables = tables_for(o.limit, g);
  u64 phi_sum = 0;
  u64 d_max = 0;
  i64 mertens = 0;
  for (u64 n = 1; n <= o.limit; ++n) {
    phi_sum += tables.totient(n);
    d_max = std::max<u64>(d_max, tables.divisors(n));
    mertens += tables.mobius(n);
  }
  ctx.results()["limit"] = o.limit;
  ctx.results()["prime_count"] = tables.primes().size();
  ctx.results()["totient_sum"] = phi_sum;
  ctx.results()["max_divisor_count"] = d_max;
  ctx.results()["mertens_function"] = mertens;
  if (o.dump) {
    std::ostringstream out;
    out << "n,phi,d,mu\n";
    for (u64 n = 1; n <= o.limit; ++n) {
      out << n << ',' << tables.totient(n) << ',' << tables.divisors(n) << ',' << tables.mobius(n) << '\n';
    }
    ctx.write("sieve.csv", out.str());
  }
}

void run_measure(RunContext& ctx, const GlobalOptions& g, const ApproxProfile& profile, const MeasureOptions& o) {
  const auto tables = tables_for(o.to, g);
  const Topology topology = o.clipped ? Topology::clipped : Topology::circle;
  std::ostringstream out;
  out << "n,f,theta,measure,expected,pieces\n";
  double worst = 0.0;
  for (u64 n = o.from; n <= o.to; ++n) {
    const double f = profile.f(n);
    const ArcSet set = arcs_for(n, profile, !o.full, tables, topology);
    const double mu = measure(set);
    const double expected = f <= 0.5 ? (o.full ? 2.0 * f : 2.0 * profile.epsilon(n) * tables.totient(n))
                                     : std::numeric_limits<double>::quiet_NaN();
    if (!std::isnan(expected)) worst = std::max(worst, std::abs(mu - expected));
    out << n << ',' << format_real(f) << ',' << format_real(profile.theta(n)) << ',' << format_real(mu) << ','
        << format_real(expected) << ',' << set.arcs().size() << '\n';
  }
  ctx.write("measure.csv", out.str());
  ctx.results()["max_abs_deviation"] = worst;
}

void run_intersect(RunContext& ctx, const GlobalOptions& g, const ApproxProfile& profile, const IntersectOptions& o) {
  SeriesOptions series;
  series.tail_rule = o.tail_rule == "uniform" ? TailRule::uniform : TailRule::periodic;
  series.term_budget = g.term_budget;
  series.full_fractions = o.full;

  std::vector<std::pair<u64, u64>> pairs;
  if (o.upto > 0) {
    for (u64 n = 1; n <= o.upto; ++n) {
      for (u64 m = n; m <= o.upto; ++m) pairs.emplace_back(n, m);
    }
  } else if (o.n > 0 && o.m > 0) {
    pairs.emplace_back(o.n, o.m);
  }
  const u64 limit = std::max({o.upto, o.n, o.m, o.bc_ratio, u64{1}});
  const auto tables = tables_for(limit, g);

  if (!pairs.empty()) {
    std::ostringstream out;
    out << "n,m,exact,series,M,tail_bound,abs_error\n";
    double worst = 0.0;
    for (const auto& [n, m] : pairs) {
      const double exact =
          measure(intersect(arcs_for(n, profile, !o.full, tables), arcs_for(m, profile, !o.full, tables)));
      const SeriesResult s = intersection_series(n, m, profile, o.tol, tables, series);
      const double err = std::abs(s.value - exact);
      worst = std::max(worst, err);
      out << n << ',' << m << ',' << format_real(exact) << ',' << format_real(s.value) << ',' << s.truncation_M << ','
          << format_real(s.tail_bound) << ',' << format_real(err) << '\n';
    }
    ctx.write("intersect.csv", out.str());
    ctx.results()["pairs"] = pairs.size();
    ctx.results()["max_abs_error"] = worst;
  }
  if (o.bc_ratio > 0) {
    RatioOptions ro;
    ro.pair_budget = g.pair_budget;
    ro.series = series;
    ro.series_rel_tol = o.series_rel_tol;
    ro.workers = g.workers;
    const MeasureMode mode = o.mode == "series" ? MeasureMode::series : MeasureMode::exact;
    const double r = borel_cantelli_ratio(o.bc_ratio, profile, !o.full, tables, mode, ro);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["N"] = o.bc_ratio;
    j["mode"] = o.mode;
    j["reduced"] = !o.full;
    j["ratio"] = r;
    j["second_moment_bound"] = second_moment_bound(o.bc_ratio, profile, tables);
    ctx.write("bc_ratio.json", j.dump(2) + "\n");
    ctx.results()["bc_ratio"] = r;
  }
}

void run_count(RunContext& ctx, const GlobalOptions& g, const ApproxProfile& profile, const CountOptions& o) {
  const auto tables = tables_for(o.N, g);
  if (o.x) {
    const CountReport r = count_solutions(*o.x, o.N, profile, tables);
    ctx.write("counts.csv", counts_csv(std::span(&r, 1)));
    ctx.results()["S"] = r.S;
    ctx.results()["E_N"] = r.E_N;
    return;
  }
  const auto reports = sample_counts(o.N, profile, tables, SampleOptions{o.samples, g.seed, g.workers});
  ctx.write("counts.csv", counts_csv(reports));
  const CountSummary s = summarize(reports);
  ctx.write("count_summary.json", count_summary_json(s, o.N, g.seed, profile.describe()));
  ctx.results()["median_ratio"] = s.median_ratio;
  ctx.results()["E_N"] = s.E_N;
  ctx.results()["variance_budget"] = variance_budget(o.N, profile, tables);
  if (o.beta) {
    u64 hits = 0;
    for (const auto& r : reports) {
      if (std::abs(static_cast<double>(r.S) - r.E_N) >= *o.beta) ++hits;
    }
    ctx.results()["tail_fraction"] = static_cast<double>(hits) / static_cast<double>(reports.size());
  }
}

void run_dimension(RunContext& ctx, const GlobalOptions& g, const ApproxProfile& profile, const DimensionOptions& o) {
  const auto grid = alpha_grid(o.alpha_from, o.alpha_to, o.alpha_steps);
  DimensionReport rep = hs_dimension(profile, o.N_max, grid, o.delta_threshold);
  if (!o.no_box) {
    const auto schedule = dyadic_checkpoints(o.box_lo, o.box_hi);
    const auto tables = tables_for(schedule.back(), g);
    BoxCountOptions bo;
    bo.shift_override = o.box_shift;
    bo.reduced = !o.box_full;
    bo.window = o.box_window == "prefix" ? BoxWindow::prefix : BoxWindow::dyadic_block;
    bo.workers = g.workers;
    rep.box_count = box_count(profile, schedule, tables, bo);
    ctx.write("boxcount.csv", box_count_csv(*rep.box_count));
    ctx.results()["box_count_slope"] = rep.box_count->slope;
  }
  ctx.write("dimension.csv", dimension_csv(rep));
  ctx.write("dimension.json", dimension_json(rep));
  ctx.results()["hs_dimension"] = rep.hs_dimension;
}

void run_criteria(RunContext& ctx, const GlobalOptions& g, const ApproxProfile& profile, const CriteriaOptions& o) {
  const CriterionKind kind = parse_criterion_kind(o.kind);
  CriterionParams params;
  if (o.h_power) params.h = power_dimension_function(*o.h_power);
  if (o.a || o.b) {
    if (!o.a || !o.b) throw ValidationError("criteria: --a and --b go together");
    params.a_b = std::pair{*o.a, *o.b};
  }
  params.K = o.K;
  params.phi_weighted_max = o.phi_weighted;
  const auto checkpoints = dyadic_checkpoints(o.lo, o.hi);
  const auto tables = tables_for(checkpoints.back(), g);
  const CriterionTrace t = criterion_trace(kind, profile, checkpoints, tables, params);
  const std::string stem = std::string("criterion_") + to_string(kind);
  ctx.write(stem + ".csv", trace_csv(t));
  ctx.write(stem + ".json", trace_json(t, params));
  ctx.results()["verdict_hint"] = to_string(t.verdict);
}

void run_bounds(RunContext& ctx, const GlobalOptions& g, const BoundsOptions& o) {
  u64 limit = std::max({o.lemma3_max, o.mertens_at, o.totient_hi, u64{1} << o.lemma2_hi, u64{1} << o.mertens_hi});
  for (u64 m : o.lemma1_m) limit = std::max(limit, m);
  const auto tables = tables_for(limit, g);
  ordered_json families;

  {
    std::ostringstream out;
    out << "k,m,ratio\n";
    std::vector<double> per_m;
    for (u64 m : o.lemma1_m) {
      double best = 0.0;
      for (u64 k = 1; k <= o.lemma1_k_max; ++k) {
        const double r = lemma1_ratio(k, m, tables);
        best = std::max(best, r);
        out << k << ',' << m << ',' << format_real(r) << '\n';
      }
      per_m.push_back(best);
    }
    ctx.write("lemma1.csv", out.str());
    families["lemma1"] = {{"max_per_m", per_m}, {"no_upward_trend", no_upward_trend(per_m)}};
  }
  {
    const auto checkpoints = dyadic_checkpoints(o.lemma2_lo, o.lemma2_hi);
    const auto ratios = lemma2_ratios(checkpoints, tables);
    std::ostringstream out;
    out << "n,ratio\n";
    for (std::size_t i = 0; i < ratios.size(); ++i) out << checkpoints[i] << ',' << format_real(ratios[i]) << '\n';
    ctx.write("lemma2.csv", out.str());
    families["lemma2"] = {{"max", *std::max_element(ratios.begin(), ratios.end())},
                          {"no_upward_trend", no_upward_trend(ratios)}};
  }
  {
    std::vector<double> ratios(o.lemma3_max - 1);
    parallel_for(ratios.size(), g.workers, [&](std::size_t i) { ratios[i] = lemma3_ratio(i + 2, tables); });
    std::ostringstream out;
    out << "m,ratio\n";
    for (std::size_t i = 0; i < ratios.size(); ++i) out << i + 2 << ',' << format_real(ratios[i]) << '\n';
    ctx.write("lemma3.csv", out.str());
    families["lemma3"] = {{"max", *std::max_element(ratios.begin(), ratios.end())},
                          {"no_upward_trend", no_upward_trend(ratios)}};
  }
  {
    const auto checkpoints = dyadic_checkpoints(o.mertens_lo, o.mertens_hi);
    std::vector<double> ratios;
    std::ostringstream out;
    out << "m,ratio\n";
    for (u64 m : checkpoints) {
      ratios.push_back(mertens_ratio(m, tables));
      out << m << ',' << format_real(ratios.back()) << '\n';
    }
    ctx.write("mertens.csv", out.str());
    families["mertens"] = {{"no_upward_trend", no_upward_trend(ratios)},
                           {"ratio_at", o.mertens_at},
                           {"ratio", mertens_ratio(o.mertens_at, tables)},
                           {"e_gamma", std::exp(std::numbers::egamma)}};
  }
  const TotientScan scan = totient_liminf_scan(o.totient_lo, o.totient_hi, tables);
  families["totient_scan"] = {{"lo", o.totient_lo}, {"hi", o.totient_hi}, {"argmin", scan.argmin}, {"min", scan.min}};

  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["trend_rule"] = "max(last quarter) <= 1.1 * max(preceding values)";
  j["families"] = families;
  ctx.write("bounds.json", j.dump(2) + "\n");
  ctx.results() = families;
}

void run_verify(RunContext& ctx, const GlobalOptions& g) {
  const auto tables = tables_for(10'000, g);
  ordered_json checks = ordered_json::array();
  std::vector<std::string> failures;
  const auto record = [&](const std::string& name, bool ok, ordered_json detail) {
    checks.push_back({{"check", name}, {"ok", ok}, {"detail", std::move(detail)}});
    if (!ok) failures.push_back(name);
  };

  u64 mismatches = 0;
  for (u64 n = 1; n <= 200; ++n) {
    for (i64 k = 0; k <= 400; ++k) mismatches += ramanujan(n, k, tables) != ramanujan_direct(n, k) ? 1 : 0;
  }
  record("ramanujan closed form vs exponential sum, n<=200, k<=400", mismatches == 0, {{"mismatches", mismatches}});

  u64 identity_failures = 0;
  for (u64 k = 1; k <= 10'000; ++k) identity_failures += divisor_square_identity(k) ? 0 : 1;
  record("d(k)^2 = sum_{l|k} d(l^2), k<=1e4", identity_failures == 0, {{"failures", identity_failures}});

  u64 gcd_failures = 0;
  for (u64 n = 1; n <= 2'000; ++n) {
    const Rational dt = dtilde(n, tables);
    const bool ok = gcd_sum(n) * static_cast<u64>(dt.den) == n * static_cast<u64>(dt.num) &&
                    gcd_sum(n) <= n * tables.divisors(n);
    gcd_failures += ok ? 0 : 1;
  }
  record("gcd sum = n dtilde(n) <= n d(n), n<=2000", gcd_failures == 0, {{"failures", gcd_failures}});

  const ApproxProfile half = make_profile(ConstantParams{0.5, 0.0});
  double measure_dev = 0.0;
  for (u64 n = 1; n <= 1'000; ++n) {
    measure_dev = std::max(measure_dev, std::abs(measure(arcs_for(n, half, true, tables)) -
                                                 2.0 * half.epsilon(n) * tables.totient(n)));
  }
  record("measure(A_n) = 2 eps_n phi(n), n<=1000", measure_dev <= 1e-12, {{"max_abs_deviation", measure_dev}});

  const ApproxProfile quarter = make_profile(ConstantParams{0.25, 0.2});
  double series_err = 0.0;
  bool series_ok = true;
  for (u64 n = 1; n <= 30; ++n) {
    for (u64 m = n; m <= 30; ++m) {
      const auto s = intersection_series(n, m, quarter, 1e-6, tables);
      const double exact = measure(intersect(arcs_for(n, quarter, true, tables), arcs_for(m, quarter, true, tables)));
      const double err = std::abs(s.value - exact);
      series_err = std::max(series_err, err);
      series_ok = series_ok && err <= std::min(s.tail_bound, 1e-6);
    }
  }
  record("intersection series vs exact sweep, n,m<=30", series_ok, {{"max_abs_error", series_err}});

  u64 leveque_failures = 0;
  for (u64 n = 1; n <= 60; ++n) {
    for (u64 m = 1; m <= 60; ++m) leveque_failures += leveque_bound_check(n, m, half, tables).holds ? 0 : 1;
  }
  record("all-fractions intersection bound, n,m<=60", leveque_failures == 0, {{"violations", leveque_failures}});

  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["checks"] = checks;
  j["passed"] = failures.empty();
  ctx.write("verify.json", j.dump(2) + "\n");
  ctx.results()["passed"] = failures.empty();
  if (!failures.empty()) {
    std::string msg = "verify: failed checks:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw ConsistencyError(msg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measures, Fourier series, counts, dimension estimates and criteria for inhomogeneous approximation sets"};
  app.set_config("--config", "", "key=value configuration file (subcommand keys under [command] sections)");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "Sampling seed")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--table-ceiling", g.table_ceiling, "Largest arithmetic table accepted")->capture_default_str();
  app.add_option("--term-budget", g.term_budget, "Largest Fourier truncation point accepted")->capture_default_str();
  app.add_option("--pair-budget", g.pair_budget, "Largest N^2 accepted for pair sums")->capture_default_str();
  auto& p = g.profile;
  app.add_option("--profile", p.family, "power | constant | paper-example | table")->capture_default_str();
  app.add_option("--tau", p.tau, "power family: f(n) = n^(1 - tau)")->capture_default_str();
  app.add_option("--value", p.value, "constant family: f(n) = value")->capture_default_str();
  app.add_option("--theta", p.theta, "constant shift in [0, 1/2]")->capture_default_str();
  app.add_option("--schedule", p.schedule, "paper-example: m(k) per dyadic block")->delimiter(',');
  app.add_option("--cap", p.cap, "paper-example: m(k) = min(k, cap) without a schedule")->capture_default_str();
  app.add_option("--log-power", p.log_power, "paper-example: power of log n")->capture_default_str();
  app.add_option("--table", p.table, "table family: file of 'n f theta' lines");
  app.add_option("--range", p.range, "table family: standard | extended | unbounded")->capture_default_str();

  SieveOptions so;
  auto* sieve = app.add_subcommand("sieve", "Build arithmetic tables and report statistics");
  sieve->add_option("--limit", so.limit)->capture_default_str();
  sieve->add_flag("--dump", so.dump, "Write n,phi,d,mu for every n");

  MeasureOptions mo;
  auto* meas = app.add_subcommand("measure", "Arc sets and their measures for a range of n");
  meas->add_option("--from", mo.from)->capture_default_str();
  meas->add_option("--to", mo.to)->capture_default_str();
  meas->add_flag("--full", mo.full, "All fractions instead of reduced ones");
  meas->add_flag("--clipped", mo.clipped, "Clip to [0, 1] instead of wrapping");

  IntersectOptions io;
  auto* inter = app.add_subcommand("intersect", "Exact vs Fourier-series intersection measures");
  inter->add_option("--n", io.n);
  inter->add_option("--m", io.m);
  inter->add_option("--upto", io.upto, "All pairs n <= m <= upto");
  inter->add_option("--tol", io.tol)->capture_default_str();
  inter->add_option("--tail-rule", io.tail_rule, "periodic | uniform")->capture_default_str();
  inter->add_flag("--full", io.full, "All fractions instead of reduced ones");
  inter->add_option("--bc-ratio", io.bc_ratio, "Also compute the second-moment ratio up to this N");
  inter->add_option("--mode", io.mode, "exact | series (for --bc-ratio)")->capture_default_str();
  inter->add_option("--series-rel-tol", io.series_rel_tol)->capture_default_str();

  CountOptions co;
  auto* count = app.add_subcommand("count", "Count approximating fractions at sampled points");
  count->add_option("--N", co.N)->capture_default_str();
  count->add_option("--samples", co.samples)->capture_default_str();
  count->add_option("--x", co.x, "Single point instead of sampling");
  count->add_option("--beta", co.beta, "Report the fraction of samples with |S - E_N| >= beta");

  DimensionOptions dopt;
  auto* dim = app.add_subcommand("dimension", "Dimension estimates (counting exponents and box counting)");
  dim->add_option("--N-max", dopt.N_max)->capture_default_str();
  dim->add_option("--alpha-from", dopt.alpha_from)->capture_default_str();
  dim->add_option("--alpha-to", dopt.alpha_to)->capture_default_str();
  dim->add_option("--alpha-steps", dopt.alpha_steps)->capture_default_str();
  dim->add_option("--delta-threshold", dopt.delta_threshold)->capture_default_str();
  dim->add_option("--box-lo", dopt.box_lo, "Box schedule starts at 2^box-lo")->capture_default_str();
  dim->add_option("--box-hi", dopt.box_hi, "Box schedule ends at 2^box-hi")->capture_default_str();
  dim->add_option("--box-shift", dopt.box_shift, "Constant shift used for box counting");
  dim->add_flag("--box-full", dopt.box_full, "Box-count the all-fractions sets");
  dim->add_option("--box-window", dopt.box_window, "dyadic-block | prefix")->capture_default_str();
  dim->add_flag("--no-box", dopt.no_box, "Skip box counting");

  CriteriaOptions cr;
  auto* crit = app.add_subcommand("criteria", "Partial quotients of a divergence criterion");
  crit->add_option("--kind", cr.kind, "thm1_3 | cor1_4 | thm1_5 | thmpo2 | thmpo | cab")->capture_default_str();
  crit->add_option("--lo", cr.lo, "Checkpoints start at 2^lo")->capture_default_str();
  crit->add_option("--hi", cr.hi, "Checkpoints end at 2^hi")->capture_default_str();
  crit->add_option("--h-power", cr.h_power, "thm1_5: h(x) = x^s");
  crit->add_option("--a", cr.a, "cab: upper-bound log power");
  crit->add_option("--b", cr.b, "cab: divergence log power");
  crit->add_option("--K", cr.K, "cab: upper-bound constant")->capture_default_str();
  crit->add_flag("--phi-weighted", cr.phi_weighted, "thm1_5: weight the max term by phi(n)");

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Lemma ratio families, Mertens product and totient scan");
  bounds->add_option("--lemma1-k-max", bo.lemma1_k_max)->capture_default_str();
  bounds->add_option("--lemma1-m", bo.lemma1_m)->delimiter(',');
  bounds->add_option("--lemma2-lo", bo.lemma2_lo)->capture_default_str();
  bounds->add_option("--lemma2-hi", bo.lemma2_hi)->capture_default_str();
  bounds->add_option("--lemma3-max", bo.lemma3_max)->capture_default_str();
  bounds->add_option("--mertens-lo", bo.mertens_lo)->capture_default_str();
  bounds->add_option("--mertens-hi", bo.mertens_hi)->capture_default_str();
  bounds->add_option("--mertens-at", bo.mertens_at)->capture_default_str();
  bounds->add_option("--totient-lo", bo.totient_lo)->capture_default_str();
  bounds->add_option("--totient-hi", bo.totient_hi)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Oracle cross-check battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  RunContext ctx(sub->get_name(), g.out);
  ctx.config()["profile"] = profile_json(p);
  ctx.config()["seed"] = g.seed;
  ctx.config()["workers"] = g.workers;
  {
    // effective settings: globals plus the active subcommand's section
    std::istringstream lines(app.config_to_str(true, false));
    std::string effective;
    for (std::string line; std::getline(lines, line);) {
      const auto eq = line.find('=');
      const auto dot = line.find('.');
      if (dot == std::string::npos || dot > eq || line.rfind(sub->get_name() + ".", 0) == 0) effective += line + '\n';
    }
    ctx.config()["effective"] = effective;
  }

  // Validate everything before computing; report all problems at once.
  std::vector<std::string> problems;
  check(problems, g.table_ceiling >= 16, "table-ceiling must be >= 16");
  check(problems, p.theta >= 0.0 && p.theta <= 0.5, "theta must lie in [0, 1/2]");
  const bool needs_profile = sub == meas || sub == inter || sub == count || sub == dim || sub == crit;
  std::optional<ApproxProfile> profile;
  if (needs_profile) profile = build_profile(p, problems);
  if (sub == meas) check(problems, mo.from >= 1 && mo.from <= mo.to, "measure: need 1 <= from <= to");
  if (sub == inter) {
    check(problems, io.upto > 0 || (io.n > 0 && io.m > 0) || io.bc_ratio > 0,
          "intersect: give --n and --m, --upto, or --bc-ratio");
    check(problems, io.tol > 0.0, "intersect: tol must be positive");
    check(problems, io.tail_rule == "periodic" || io.tail_rule == "uniform", "intersect: tail-rule must be periodic or uniform");
    check(problems, io.mode == "exact" || io.mode == "series", "intersect: mode must be exact or series");
  }
  if (sub == count) {
    check(problems, co.N >= 1, "count: N must be >= 1");
    check(problems, co.samples >= 1, "count: samples must be >= 1");
    if (co.beta) check(problems, *co.beta > 0.0, "count: beta must be positive");
  }
  if (sub == dim) {
    check(problems, dopt.N_max >= 4 && std::has_single_bit(dopt.N_max), "dimension: N-max must be a power of 2, >= 4");
    check(problems, dopt.alpha_from >= 1.0 && dopt.alpha_to >= dopt.alpha_from && dopt.alpha_steps > 0,
          "dimension: need 1 <= alpha-from <= alpha-to and alpha-steps > 0");
    check(problems, dopt.no_box || (dopt.box_lo >= 1 && dopt.box_hi >= dopt.box_lo + 2 && dopt.box_hi <= 30),
          "dimension: need 1 <= box-lo, box-lo + 2 <= box-hi <= 30");
    check(problems, dopt.box_window == "dyadic-block" || dopt.box_window == "prefix",
          "dimension: box-window must be dyadic-block or prefix");
  }
  if (sub == crit) {
    check(problems, cr.lo <= cr.hi && cr.hi <= 30, "criteria: need lo <= hi <= 30");
    try {
      const CriterionKind kind = parse_criterion_kind(cr.kind);
      check(problems, (kind == CriterionKind::thm1_5) == cr.h_power.has_value(), "criteria: --h-power is required for thm1_5 and only there");
      check(problems, (kind == CriterionKind::cab) == (cr.a.has_value() && cr.b.has_value()),
            "criteria: --a and --b are required for cab and only there");
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }
  if (sub == bounds) {
    check(problems, bo.lemma3_max >= 2 && bo.mertens_at >= 3 && bo.totient_lo >= 10 && bo.totient_hi >= bo.totient_lo,
          "bounds: need lemma3-max >= 2, mertens-at >= 3, 10 <= totient-lo <= totient-hi");
    check(problems, bo.lemma2_lo >= 1 && bo.lemma2_lo <= bo.lemma2_hi && bo.mertens_lo >= 2 && bo.mertens_lo <= bo.mertens_hi,
          "bounds: dyadic ranges must be ascending (lemma2-lo >= 1, mertens-lo >= 2)");
    check(problems, !bo.lemma1_m.empty(), "bounds: lemma1-m must not be empty");
  }
  if (!problems.empty()) {
    for (const auto& msg : problems) std::cerr << "error: " << msg << '\n';
    ctx.fail(to_string(ErrorKind::validation), problems, exit_code(ErrorKind::validation));
    return exit_code(ErrorKind::validation);
  }

  try {
    if (sub == sieve) run_sieve(ctx, g, so);
    else if (sub == meas) run_measure(ctx, g, *profile, mo);
    else if (sub == inter) run_intersect(ctx, g, *profile, io);
    else if (sub == count) run_count(ctx, g, *profile, co);
    else if (sub == dim) run_dimension(ctx, g, *profile, dopt);
    else if (sub == crit) run_criteria(ctx, g, *profile, cr);
    else if (sub == bounds) run_bounds(ctx, g, bo);
    else if (sub == verify) run_verify(ctx, g);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    ctx.fail(to_string(e.kind()), {e.what()}, exit_code(e.kind()));
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    ctx.fail("internal", {e.what()}, 1);
    return 1;
  }
  ctx.finish(0);
  return 0;
}
