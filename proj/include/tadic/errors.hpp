#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tadic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: violated preconditions, unsupported sizes, malformed input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// The requested output precision cannot be certified from the inputs.
class PrecisionUnderflow : public Error {
 public:
  explicit PrecisionUnderflow(const std::string& what) : Error(what) {}
};

/// A proven identity or bound failed. Always indicates a bug (or a
/// precision budget too small for an assertion that should not fail).
class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(const std::string& what) : Error(what) {}
};

/// A quantity that must be p-integral was not.
class IntegralityViolation : public TheoremViolation {
 public:
  explicit IntegralityViolation(const std::string& what) : TheoremViolation(what) {}
};

/// Laurent polynomial text did not parse.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : DomainError(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace tadic
