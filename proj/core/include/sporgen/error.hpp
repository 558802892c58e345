#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sporgen {

// Domain failures. The CLI maps every Error to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : what + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A computation refused because the group is larger than the caller's limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Data that parses but contradicts itself (wrong declared orders, broken
// orthogonality, non-integral structure constants, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace sporgen
