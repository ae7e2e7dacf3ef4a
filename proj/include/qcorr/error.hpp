#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Rejected input: bad parameters, malformed arguments, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: eigensolver non-convergence, a state that is not
/// positive semidefinite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output stream failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
