#pragma once

#include <stdexcept>
#include <string>

namespace trisg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (symmetric input to
/// the relation-matrix stage, unsupported power, negative argument, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (sieve size, iteration budget, gap count) would
/// be exceeded. The message names the cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Too few sample points to over-determine a fit or a period candidate.
class InsufficientDataError : public Error {
 public:
  InsufficientDataError(const std::string& what, long long required)
      : Error(what), required_(required) {}
  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

/// A transcribed table record is malformed or violates its invariants.
class TableError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace trisg
