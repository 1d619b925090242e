#pragma once

#include <stdexcept>
#include <string>

namespace cveacc {

// Root of the library's exception hierarchy. The CLI maps each subclass to a
// fixed exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message) {}
};

class NotSymplecticError : public Error {
 public:
  explicit NotSymplecticError(const std::string& message) : Error(message) {}
};

// An internal consistency check (HΥ^T = F, round structure, ...) failed.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& message) : Error(message) {}
};

class DecodeError : public Error {
 public:
  enum class Kind { Ambiguous, Uncorrectable };

  DecodeError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace cveacc
