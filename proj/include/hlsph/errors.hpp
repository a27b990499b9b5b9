#pragma once

#include <stdexcept>
#include <string>

namespace hlsph {

/// Bad argument or malformed input (maps to CLI exit code 2).
struct InvalidValue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A binomial division left a nonzero remainder.
struct InexactDivision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction did not.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

/// Evaluation hit a vanishing denominator.
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Not enough p-adic precision to certify a valuation (exit code 3).
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what, int required_hint = 0)
      : std::runtime_error(what), required_precision(required_hint) {}
  int required_precision;
};

/// Enumeration or sampling budget exceeded (exit code 3).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hlsph
