#pragma once

#include <stdexcept>
#include <string>

namespace hammersley {

/// A numeric parameter (rate, probability, intensity) is out of range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two simulation events (alpha or sink) carry the same time value.
class DuplicateEventTime : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A functional returned a non-finite value during generator evaluation.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hammersley
