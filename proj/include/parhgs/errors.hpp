#pragma once

#include <stdexcept>
#include <string>

namespace parhgs {

/// A caller violated an operation's precondition (bad subgroup containment,
/// invalid parameters, malformed input).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource bound (group order, search size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A computed result disagreed with a stated expectation.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parhgs
