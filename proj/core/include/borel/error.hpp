#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace borel {

enum class ErrorCode {
  composition_not_zero,
  odd_codegree,
  algebra_mismatch,
  not_chain_map,
  not_finite_length,
  window_too_small,
  not_torsion,
  unbounded,
  not_polynomial_homology,
  not_graded_commutative,
  homology_not_k,
  linear_solve_failed,
  not_finite,
  parse_error,
  invariant_violation,
  unknown_group,
  window_required,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

/// All library failures carry a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures additionally record the 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::parse_error, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace borel
