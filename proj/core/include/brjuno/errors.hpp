#pragma once

#include <stdexcept>
#include <string>

namespace brjuno {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

/// The point is (or collapsed to) a rational, where B_sigma = +inf.
struct RationalInputError : Error {
  using Error::Error;
};

/// A float-seeded expansion ran out of certified digits.
struct PrecisionExhaustedError : Error {
  using Error::Error;
};

/// Malformed CFSpec (empty period entries, quotients < 1, ...).
struct InvalidSpecError : Error {
  using Error::Error;
};

/// A partial quotient exceeded the configured cap (seed is
/// indistinguishable from a rational at working precision).
struct QuotientCapError : Error {
  using Error::Error;
};

}  // namespace brjuno
