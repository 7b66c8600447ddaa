#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtk {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a 0-based byte offset into the parsed string.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  /// Located in a multi-line source; line and column are 1-based.
  SyntaxError(const std::string& what, std::size_t position, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        position_(position),
        line_(line),
        column_(column) {}
  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t position_;
  std::size_t line_ = 0, column_ = 0;
};

class UnknownVariable : public Error {
 public:
  UnknownVariable(const std::string& name, std::size_t position)
      : Error("unknown variable '" + name + "' at position " + std::to_string(position)),
        name_(name),
        position_(position) {}
  UnknownVariable(const std::string& name, std::size_t position, std::size_t line, std::size_t column)
      : Error("unknown variable '" + name + "' at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        name_(name),
        position_(position),
        line_(line),
        column_(column) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string name_;
  std::size_t position_;
  std::size_t line_ = 0, column_ = 0;
};

/// A configured cap (S-pair count, total degree, matrix size) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

#define DTK_SIMPLE_ERROR(Name) \
  class Name : public Error {  \
   public:                     \
    using Error::Error;        \
  };

DTK_SIMPLE_ERROR(ZeroPolynomial)
DTK_SIMPLE_ERROR(RingMismatch)
DTK_SIMPLE_ERROR(ZeroDenominator)
DTK_SIMPLE_ERROR(UnitIdeal)
DTK_SIMPLE_ERROR(NotSquarefree)
DTK_SIMPLE_ERROR(ZeroRoot)
DTK_SIMPLE_ERROR(NotInvariant)
DTK_SIMPLE_ERROR(MissingHints)
DTK_SIMPLE_ERROR(NotGenericallyProjecting)
DTK_SIMPLE_ERROR(BadIndices)
DTK_SIMPLE_ERROR(MissingParameter)
DTK_SIMPLE_ERROR(NotAnIntegral)
DTK_SIMPLE_ERROR(NumericOverflow)
DTK_SIMPLE_ERROR(InsufficientSamples)
DTK_SIMPLE_ERROR(EmptyInput)
DTK_SIMPLE_ERROR(InvalidArgument)

#undef DTK_SIMPLE_ERROR

}  // namespace dtk
