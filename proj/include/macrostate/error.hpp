#pragma once

#include <stdexcept>
#include <string>

namespace macrostate {

/// Raised for unusable data: malformed input, degenerate series, policy
/// violations. Precondition violations on arguments use std::invalid_argument.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation needs more observations than it was given.
class InsufficientObservations : public DataError {
 public:
  explicit InsufficientObservations(const std::string& detail = {})
      : DataError(detail.empty() ? "insufficient observations"
                                 : "insufficient observations: " + detail) {}
};

}  // namespace macrostate
