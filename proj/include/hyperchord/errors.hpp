#pragma once

#include <stdexcept>
#include <string>

namespace hyperchord {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A density was evaluated exactly at an integrable singularity.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A dimension-specific routine was called for a dimension it does not cover.
class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data (samples, files, configuration) failed validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hyperchord
