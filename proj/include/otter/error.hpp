#pragma once

#include <stdexcept>
#include <string>

namespace otter {

/// An argument or context violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical result could not be certified at the requested precision.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes to the same quantity disagree beyond their radii.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; the message names the offending row.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otter
