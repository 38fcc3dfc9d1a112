#pragma once

#include <stdexcept>
#include <string>

namespace idla {

enum class ErrorKind {
  invalid_parameter,
  not_vertex_transitive,
  numeric_failure,
  budget_exceeded,
  parse_error,
  missing_file,
  io_error,
};

const char* to_string(ErrorKind k);

// Process exit code used by the CLI for each error kind (all nonzero, distinct).
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace idla
