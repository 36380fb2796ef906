#pragma once

#include <stdexcept>
#include <string>

namespace tigress {

// Failure classes. The CLI maps each class to an exit code.

/// Malformed input file content (ragged rows, bad numbers, conflicting labels).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifier that cannot be resolved against a known gene set.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside its admissible domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated a documented precondition of a numerical routine.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite or otherwise unusable numerical input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Predictions and gold standard share no usable labeled pairs.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tigress
