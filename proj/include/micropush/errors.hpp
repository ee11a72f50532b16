#pragma once

#include <stdexcept>
#include <string>

namespace micropush {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-length vector where a direction was required (coincident points).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

class InvalidWidth : public Error {
 public:
  using Error::Error;
};

/// A configuration or command violated its documented invariants.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class EmptyTrajectory : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NotCompleted : public Error {
 public:
  using Error::Error;
};

/// Path-file parse failure; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace micropush
