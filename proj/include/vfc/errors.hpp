#pragma once

#include <stdexcept>
#include <string>

namespace vfc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A task row with no compute entries (violates the coverage constraint).
struct UnassignedTaskError : Error {
  using Error::Error;
};

/// A cost routine was handed entries from the wrong tier.
struct TierMismatchError : Error {
  using Error::Error;
};

struct EmptyWorkloadError : Error {
  using Error::Error;
};

struct DivisionByZeroError : Error {
  using Error::Error;
};

/// No placement exists: demand exceeds every node and the split fallback.
struct InfeasibleError : Error {
  using Error::Error;
};

/// A reservation request larger than the node's core count can never fit.
struct NeverFitsError : Error {
  using Error::Error;
};

struct BadRangeError : Error {
  using Error::Error;
};

/// Malformed workload or configuration input; message names the offending
/// file/field.
struct ParseError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace vfc
