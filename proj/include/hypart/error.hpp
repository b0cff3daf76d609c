#pragma once

#include <stdexcept>
#include <string>

namespace hypart {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (e.g. hypergraph class sizes vs degree sequence lengths).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A move whose preconditions do not hold on the current hypergraph.
/// Callers in the sampler treat this as a rejected no-op proposal.
class InvalidMove : public Error {
 public:
  using Error::Error;
};

class NotBalanced : public Error {
 public:
  using Error::Error;
};

class SumMismatch : public Error {
 public:
  using Error::Error;
};

class NotAlmostRegular : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a brute-force oracle's hard cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyHypergraph : public Error {
 public:
  using Error::Error;
};

class EmptyLadder : public Error {
 public:
  using Error::Error;
};

/// The sampler ran out of its step budget before collecting enough samples.
class Timeout : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents or unusable user input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypart
