#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subriem {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("ambient dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class IndexOutOfRange : public Error {
public:
  IndexOutOfRange(std::size_t index, std::size_t dim)
      : Error("coordinate index " + std::to_string(index) + " out of range for dimension " +
              std::to_string(dim)) {}
};

class NotOnSphere : public Error {
public:
  NotOnSphere() : Error("point does not lie on the unit sphere") {}
};

class NotTangent : public Error {
public:
  explicit NotTangent(const std::string &what) : Error("field is not tangent to the sphere: " + what) {}
};

class DependentFrame : public Error {
public:
  DependentFrame(std::size_t rank, std::size_t count)
      : Error("frame is dependent: generic rank " + std::to_string(rank) + " < " +
              std::to_string(count) + " fields") {}
};

class GramSingular : public Error {
public:
  explicit GramSingular(const std::string &what) : Error(what) {}
};

class NotHorizontal : public Error {
public:
  explicit NotHorizontal(const std::string &what) : Error("section is not horizontal: " + what) {}
};

class MissingVerticalFrame : public Error {
public:
  MissingVerticalFrame() : Error("operation needs an explicit vertical frame") {}
};

/// Raised when a value that must be exactly divisible is not.
class InexactDivision : public Error {
public:
  InexactDivision() : Error("polynomial division is not exact") {}
};

/// Expression parsing errors carry the byte offset into the source string.
class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string &message)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
public:
  SyntaxError(std::size_t position, const std::string &expected)
      : ParseError(position, "syntax error: expected " + expected), expected_(expected) {}
  const std::string &expected() const noexcept { return expected_; }

private:
  std::string expected_;
};

class UnknownVariable : public ParseError {
public:
  UnknownVariable(std::size_t position, const std::string &name)
      : ParseError(position, "unknown variable '" + name + "'") {}
};

class NegativeExponent : public ParseError {
public:
  explicit NegativeExponent(std::size_t position) : ParseError(position, "negative exponent") {}
};

/// Malformed distribution spec files and bad CLI input.
class InputError : public Error {
public:
  using Error::Error;
};

} // namespace subriem
