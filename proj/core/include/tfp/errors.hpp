#pragma once

#include <stdexcept>
#include <string>

namespace tfp {

// Malformed permutation or map input.
struct MapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A size cap (enumeration, down-set, dense tensor) would be exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Odd moment / half-integer power that cannot be represented.
struct ParityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Operation not defined for this input (e.g. Moebius inversion at odd degree).
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tfp
