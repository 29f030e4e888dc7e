#pragma once

#include <stdexcept>
#include <string>

namespace slitpath {

/// Raised when an operation needs a component that is switched off
/// (e.g. a detector channel requested with the detector disabled).
class InvalidState : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Raised when the input carries no usable mass (an all-zero field asked
/// to be normalized, for instance).
class DegenerateInput : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// No dominant oscillation was found in an intensity profile.
class NoFringes : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A NaN or Inf escaped a numerical kernel.
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace slitpath
