#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kqj2 {

enum class ErrorCode {
  Singular,
  Mismatch,
  InvalidArgument,
  NotPrime,
  EmptyQuiver,
  NotAcyclic,
  NotReduced,
  NotDifferential,
  NotAModule,
  NotProjective,
  InvalidModule,
  DuplicateName,
  UnknownName,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EmptyQuiver: return "EmptyQuiver";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::NotDifferential: return "NotDifferential";
    case ErrorCode::NotAModule: return "NotAModule";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownName: return "UnknownName";
  }
  return "Unknown";
}

/// Raised when an operation's mathematical precondition fails on valid input
/// (singular matrix, non-projective module, mismatched quivers, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class ParseErrorKind { Syntax, DuplicateName, UnknownVertex };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Two independent computations of the same quantity disagreed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kqj2
