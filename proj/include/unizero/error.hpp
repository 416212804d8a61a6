#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unizero {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input lies outside the range where 64-bit arithmetic on minors is exact.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class NotUnimodularError : public Error {
 public:
  using Error::Error;
};

// The structural ordering is undefined on zero.
class ZeroEntryError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed or infeasible enumeration request.
class QueryError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { kMalformedToken, kNonSquare, kZeroEntry, kDimensionMismatch, kFormat };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace unizero
