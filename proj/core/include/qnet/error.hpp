#pragma once

#include <stdexcept>
#include <string>

namespace qnet {

/// Base for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input. The message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested topology cannot be produced within the resampling budget.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnet
