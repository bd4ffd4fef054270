#pragma once

#include <stdexcept>
#include <string>

namespace pqoselm {

enum class ErrorKind {
  ParamOutOfRange,
  UnknownPreset,
  UnknownClass,
  TooManyLevels,
  MalformedDecomposition,
  DegenerateSequence,
  WrongLevelCount,
  InsufficientInitData,
  NotInitialized,
  InvalidArgument,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::TooManyLevels: return "TooManyLevels";
    case ErrorKind::MalformedDecomposition: return "MalformedDecomposition";
    case ErrorKind::DegenerateSequence: return "DegenerateSequence";
    case ErrorKind::WrongLevelCount: return "WrongLevelCount";
    case ErrorKind::InsufficientInitData: return "InsufficientInitData";
    case ErrorKind::NotInitialized: return "NotInitialized";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a message or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pqoselm
