#pragma once

#include "dioph/arith.hpp"

namespace test_support {

/// Tables up to 2^20, built once per test binary.
inline const dioph::ArithTables& tables() {
  static const dioph::ArithTables t = dioph::build_tables(dioph::u64{1} << 20);
  return t;
}

}  // namespace test_support
