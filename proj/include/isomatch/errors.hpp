#pragma once

#include <stdexcept>
#include <string>

namespace isomatch {

// Malformed input: bad graph files, violated preconditions, unknown flags.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The brute-force oracle was asked to work beyond its configured scale.
class OracleScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The graph has no perfect matching where one is required.
class NoPerfectMatching : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven property failed to hold. Always a bug signal.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace isomatch
