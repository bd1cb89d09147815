#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psi {

enum class ErrorKind {
  EmptyText,
  BlockTooLarge,
  AlphabetOverflow,
  OutOfRange,
  BadLength,
  PatternTooShort,
  InvalidCode,
  InternalInvariantViolation,
  NoSuchChild,
  EmptyPattern,
  BadMagic,
  VersionMismatch,
  CorruptSection,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyText: return "EmptyText";
    case ErrorKind::BlockTooLarge: return "BlockTooLarge";
    case ErrorKind::AlphabetOverflow: return "AlphabetOverflow";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::PatternTooShort: return "PatternTooShort";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::NoSuchChild: return "NoSuchChild";
    case ErrorKind::EmptyPattern: return "EmptyPattern";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CorruptSection: return "CorruptSection";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` names the failure class;
/// `what()` carries the detail (e.g. the section name for CorruptSection).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::InternalInvariantViolation, what);
}

}  // namespace psi
