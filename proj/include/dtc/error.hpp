#pragma once

#include <stdexcept>
#include <string>

namespace dtc {

/// Base class for every error raised by the compiler toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Carries the 1-based position of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// The cropped geometry cannot host what was asked of it.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// No feasible assignment or path exists.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

class RoutingError : public Error {
public:
  using Error::Error;
};

} // namespace dtc
