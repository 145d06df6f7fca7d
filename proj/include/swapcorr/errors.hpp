#pragma once

#include <stdexcept>
#include <string>

namespace swapcorr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input: non-Hermitian matrices, dimension
/// mismatches, bad subsystem indices, parameters out of range.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An eigensolver or optimizer did not produce a usable result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace swapcorr
