#pragma once

#include <stdexcept>
#include <string>

namespace lpc {

// Invalid parameters, malformed configuration, dimension mismatches.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed input data (CSV parse failures, bad datasets).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical or LP-level failures.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// The expectation constraints admit no distribution. Detected as an
// unbounded dual / infeasible primal; a recoverable result, not a bug.
class EmptyUncertaintySet : public NumericError {
 public:
  explicit EmptyUncertaintySet(const std::string& msg) : NumericError(msg) {}
};

}  // namespace lpc
