#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkhorizon {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Every row (equivalently, every singular value) of the matrix is zero.
struct AllZeroMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

struct ZeroRow : std::domain_error {
  using std::domain_error::domain_error;
};

/// Singular-vector index outside [1, rank].
struct IndexOutOfRank : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// The supplied underlying pair (A, b) is not a consistent system.
struct InconsistentUnderlying : std::domain_error {
  using std::domain_error::domain_error;
};

/// Vector claimed to lie in null(A) has a row-space component above tolerance.
struct NullSpaceViolation : std::domain_error {
  using std::domain_error::domain_error;
};

/// beta > 0 requested but the column space already fills R^m.
struct NoComplement : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyTraceSet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MismatchedCheckpoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WriteFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse errors carry the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
  std::size_t line_no;
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_no(line) {}
};

struct MalformedLine : ParseError {
  using ParseError::ParseError;
};

struct NonIncreasingIndex : ParseError {
  using ParseError::ParseError;
};

struct EmptyFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Densifying the parsed data would exceed the configured entry budget.
struct DenseBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rkhorizon
