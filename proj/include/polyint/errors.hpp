#pragma once

#include <stdexcept>
#include <string>

namespace polyint {

/// Malformed arguments: non-unit directions, bad ranges, unsupported dimensions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a point where a formula is singular (e.g. r = 0 in a 1/r expansion).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Data that cannot support the requested diagnostic (non-positive values in a
/// log fit, vanishing variance, ...).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation finished but its hypothesis gate or certificate rejected the
/// input: a body that is not an ellipsoid, a transform with no polynomial
/// preimage. The CLI maps these to exit status 2.
class RejectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyint
