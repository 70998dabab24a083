#pragma once

#include <stdexcept>
#include <string>

namespace erl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative or quadrature routine failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested quantity does not exist for these inputs
/// (zero variance, zero mean for a coefficient of variation, ...).
class UndefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or missing user input (files, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace erl
