#pragma once

#include <stdexcept>
#include <string>

namespace teichflow {

/// Raised when an argument lies outside the domain of an operation
/// (out-of-range parameters, zero vectors on spheres, mismatched grids).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a caller breaks a documented precondition that is checked
/// numerically, e.g. a vector that should be tangent to the target is not.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace teichflow
