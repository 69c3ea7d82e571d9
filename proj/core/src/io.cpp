#include "dioph/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dioph/rng.hpp"

namespace dioph {

using nlohmann::ordered_json;

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

ordered_json real_or_null(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string trace_csv(const CriterionTrace& t) {
  const bool secondary = !t.secondary.empty();
  const bool bounds = !t.bound_ok.empty();
  std::ostringstream out;
  out << "N,quotient";
  if (secondary) out << ",secondary";
  if (bounds) out << ",bound_ok";
  out << ",degenerate\n";
  for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
    out << t.checkpoints[i] << ',' << format_real(t.quotients[i]);
    if (secondary) out << ',' << format_real(t.secondary[i]);
    if (bounds) out << ',' << (t.bound_ok[i] ? 1 : 0);
    out << ',' << (t.degenerate[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string trace_json(const CriterionTrace& t, const CriterionParams& params) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = to_string(t.kind);
  j["profile"] = t.profile;
  ordered_json p = ordered_json::object();
  if (params.h) p["h"] = params.h->label;
  if (params.a_b) {
    p["a"] = params.a_b->first;
    p["b"] = params.a_b->second;
    p["K"] = params.K;
  }
  if (t.kind == CriterionKind::thm1_5) p["phi_weighted_max"] = params.phi_weighted_max;
  j["params"] = p;
  j["verdict_hint"] = to_string(t.verdict);
  j["trend_rule"] = {{"compare", "max(last quarter) / max(first quarter)"},
                     {"diverging_at_least", kDivergingFactor},
                     {"bounded_at_most", kBoundedFactor}};
  j["checkpoints"] = t.checkpoints.size();
  std::size_t degenerate = 0;
  for (bool d : t.degenerate) degenerate += d ? 1 : 0;
  j["degenerate_checkpoints"] = degenerate;
  if (!t.bound_ok.empty()) {
    bool all = true;
    for (bool b : t.bound_ok) all = all && b;
    j["upper_bound_holds"] = all;
  }
  return j.dump(2) + "\n";
}

std::string counts_csv(std::span<const CountReport> reports) {
  std::ostringstream out;
  out << "sample,x,S,E_N,ratio\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << i << ',' << format_real(r.x) << ',' << r.S << ',' << format_real(r.E_N) << ','
        << (r.ratio ? format_real(*r.ratio) : std::string("nan")) << '\n';
  }
  return out.str();
}

std::string count_summary_json(const CountSummary& s, u64 N, u64 seed, const std::string& profile) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["profile"] = profile;
  j["N"] = N;
  j["seed"] = seed;
  j["rng"] = CounterRng::kAlgorithm;
  j["samples"] = s.samples;
  j["E_N"] = s.E_N;
  j["mean_S"] = s.mean_S;
  j["mean_ratio"] = s.mean_ratio;
  j["median_ratio"] = s.median_ratio;
  j["ratio_deciles"] = s.ratio_deciles;
  return j.dump(2) + "\n";
}

std::string dimension_csv(const DimensionReport& r) {
  std::ostringstream out;
  out << "alpha,delta_hat,kappa_hat";
  for (u64 N : r.checkpoints) out << ",C(" << N << ')';
  out << '\n';
  for (std::size_t i = 0; i < r.alpha_grid.size(); ++i) {
    out << format_real(r.alpha_grid[i]) << ',' << format_real(r.delta_hat[i]) << ',' << format_real(r.kappa_hat[i]);
    for (u64 c : r.c_alpha[i]) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

std::string dimension_json(const DimensionReport& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["profile"] = r.profile;
  j["N_max"] = r.N_max;
  j["delta_threshold"] = r.delta_threshold;
  j["estimator"] = "finite-N counting-exponent estimate";
  j["hs_dimension"] = r.hs_dimension;
  j["lower_order_hat"] = real_or_null(r.lower_order_hat);
  j["closed_form_dimension"] = real_or_null(r.closed_form_dimension);
  if (r.box_count) {
    const auto& b = *r.box_count;
    j["box_count"] = {{"slope", b.slope},
                      {"intercept", b.intercept},
                      {"r_squared", b.r_squared},
                      {"reduced", b.reduced},
                      {"window", b.window},
                      {"shift_override", real_or_null(b.shift_override)}};
  } else {
    j["box_count"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string box_count_csv(const BoxCountResult& r) {
  std::ostringstream out;
  out << "N,j,count\n";
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    out << r.schedule[i] << ',' << r.resolution[i] << ',' << r.counts[i] << '\n';
  }
  return out.str();
}

}  // namespace dioph
