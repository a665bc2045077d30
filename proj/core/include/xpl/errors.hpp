#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xpl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed XML, filter or formula text. Line and column are 1-based; single
// line inputs (filters, formulas) always report line 1.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        detail_(message),
        line_(line),
        column_(column) {}

  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// A filter comparison needed a number but an operand could not be coerced.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Well-formed XML that does not describe a valid network.
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnknownKey : public Error {
 public:
  explicit UnknownKey(const std::string& key)
      : Error("unknown node key '" + key + "'"), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class UnboundAtom : public Error {
 public:
  using Error::Error;
};

class SizeExceeded : public Error {
 public:
  using Error::Error;
};

class NotSatisfied : public Error {
 public:
  using Error::Error;
};

class MissingFilter : public Error {
 public:
  using Error::Error;
};

class EmptyNetwork : public Error {
 public:
  EmptyNetwork() : Error("network has no nodes") {}
};

}  // namespace xpl
