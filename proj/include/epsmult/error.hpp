#ifndef EPSMULT_ERROR_HPP
#define EPSMULT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace epsmult {

/// Error categories. The numeric values double as CLI exit codes where the
/// category maps onto one (see tools/epsmult.cpp).
enum class ErrorCode : int {
  precondition = 1,
  hypothesis = 2,
  budget = 3,
  ingestion = 4,
  invariant = 5,
  dimension_mismatch = 6,
  containment = 7,
  overflow = 8,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::precondition, what) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorCode::dimension_mismatch, what) {}
};

class ContainmentError : public Error {
public:
  explicit ContainmentError(const std::string& what)
      : Error(ErrorCode::containment, what) {}
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what)
      : Error(ErrorCode::budget, what) {}
};

class IngestionError : public Error {
public:
  explicit IngestionError(const std::string& what)
      : Error(ErrorCode::ingestion, what) {}
};

class InvariantFailure : public Error {
public:
  explicit InvariantFailure(const std::string& what)
      : Error(ErrorCode::invariant, what) {}
};

class ExponentOverflow : public Error {
public:
  explicit ExponentOverflow(const std::string& what)
      : Error(ErrorCode::overflow, what) {}
};

/// Raised when a pair violates the limit-existence hypotheses; carries the
/// offending facet (variable names) so callers can show it.
class HypothesisFailure : public Error {
public:
  HypothesisFailure(const std::string& what, std::vector<std::string> witness)
      : Error(ErrorCode::hypothesis, what), witness_(std::move(witness)) {}
  const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
  std::vector<std::string> witness_;
};

} // namespace epsmult

#endif
