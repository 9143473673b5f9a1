#pragma once

#include <stdexcept>
#include <string>

namespace fracnoether {

// Invalid arguments: bad domains, orders, mismatched dimensions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular or ill-conditioned systems, non-finite results.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or incomplete run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracnoether
