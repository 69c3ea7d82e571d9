#include "dioph/error.hpp"

namespace dioph {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::budget: return "budget";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::consistency: return "consistency";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::degenerate: return 2;
    case ErrorKind::capacity:
    case ErrorKind::budget: return 3;
    case ErrorKind::consistency: return 4;
  }
  return 4;
}

}  // namespace dioph
