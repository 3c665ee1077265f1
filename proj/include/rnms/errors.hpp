#ifndef RNMS_ERRORS_HPP
#define RNMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rnms {

/// Invalid argument to a library operation (index out of range, bad probability vector, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured memory or work budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overflow, non-convergence, or a numeric postcondition that did not hold.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation exists only for a subset of the family (e.g. m = 1).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rnms

#endif  // RNMS_ERRORS_HPP
