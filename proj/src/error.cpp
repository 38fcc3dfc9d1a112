#include "idla/error.hpp"

namespace idla {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::not_vertex_transitive: return "not-vertex-transitive";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::missing_file: return "missing-file";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse_error: return 2;
    case ErrorKind::missing_file: return 3;
    case ErrorKind::invalid_parameter: return 4;
    case ErrorKind::not_vertex_transitive: return 5;
    case ErrorKind::numeric_failure: return 6;
    case ErrorKind::budget_exceeded: return 7;
    case ErrorKind::io_error: return 8;
  }
  return 1;
}

}  // namespace idla
