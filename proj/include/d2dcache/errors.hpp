#pragma once

#include <stdexcept>
#include <string>

namespace d2dcache {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Network or experiment configuration that cannot be realized (e.g. a cluster
// size that does not tile the grid). Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative solver failed or a result is not finite. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace d2dcache
