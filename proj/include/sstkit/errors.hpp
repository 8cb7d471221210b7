#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sstkit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A letter, variable or label that does not belong to the expected alphabet,
/// or two values built over incompatible alphabets.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A structural invariant of a machine or instance does not hold.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// An operation was called on an input outside its contract
/// (e.g. a nondeterministic machine where determinism is required).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An internal cross-check failed. Seeing one of these is a bug.
class SoundnessError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace sstkit
