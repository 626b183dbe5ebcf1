#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surgery {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not match a grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace surgery
