#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlog {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula, sequent or query text. position() is a 0-based offset
// into the text that was being parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " + message),
        detail_(message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  // The message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

class LatticeError : public Error {
 public:
  enum class Kind {
    Format,          // lattice file does not follow the line format
    NotALattice,     // some pair lacks a unique meet or join
    OrthoViolation,  // an ortholattice identity fails
    Bounds,          // missing, duplicate or wrong bottom/top
    TooLarge,        // size guard
    UnknownElement,
    UnknownBuiltin,
  };

  LatticeError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// An enumeration would exceed its configured cap.
class GuardError : public Error {
 public:
  using Error::Error;
};

// A formula mentions a variable the valuation does not assign.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlog
