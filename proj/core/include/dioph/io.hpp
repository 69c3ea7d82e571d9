#pragma once

// Serialization of results to CSV bodies and JSON headers. Reals are written
// with %.17g so that files round-trip and repeat runs compare byte for byte.

#include <span>
#include <string>

#include "dioph/counting.hpp"
#include "dioph/criteria.hpp"
#include "dioph/dimension.hpp"

namespace dioph {

inline constexpr int kSchemaVersion = 1;

/// %.17g, with "nan" / "inf" / "-inf" spelled out.
std::string format_real(double value);

/// N,quotient[,secondary][,bound_ok],degenerate
std::string trace_csv(const CriterionTrace& trace);
std::string trace_json(const CriterionTrace& trace, const CriterionParams& params);

/// sample,x,S,E_N,ratio
std::string counts_csv(std::span<const CountReport> reports);
std::string count_summary_json(const CountSummary& summary, u64 N, u64 seed, const std::string& profile);

/// alpha,delta_hat,kappa_hat,C(N_1),...,C(N_k)
std::string dimension_csv(const DimensionReport& report);
std::string dimension_json(const DimensionReport& report);

/// N,j,count
std::string box_count_csv(const BoxCountResult& result);

}  // namespace dioph
