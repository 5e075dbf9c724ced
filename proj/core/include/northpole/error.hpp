#pragma once

#include <stdexcept>

namespace northpole {

// Thrown when an argument violates an operation's documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative numeric routine fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace northpole
