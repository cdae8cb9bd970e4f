#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <string>

namespace gapstat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value fell outside the closed unit interval (or was NaN).
class OutOfRangeError : public Error {
 public:
  OutOfRangeError(std::size_t index, double value);

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("input contains no samples") {}
};

/// Malformed input text or bytes; `location` names the line or byte offset.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class GridMismatchError : public Error {
 public:
  GridMismatchError(std::size_t lhs, std::size_t rhs);
};

/// The double-precision exact max-gap law was asked for an N above its cutoff.
class CutoffExceededError : public Error {
 public:
  CutoffExceededError(std::size_t n, std::size_t cutoff);
};

class TooFewSamplesError : public Error {
 public:
  TooFewSamplesError(std::size_t have, std::size_t need);
};

/// Generator or configuration parameter outside its documented domain.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace gapstat
