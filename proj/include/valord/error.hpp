#pragma once

#include <stdexcept>
#include <string>

namespace valord {

/// Failure codes surfaced by the library. Decision outcomes (a refusal,
/// an undefined infimum, a failed check) are ordinary return values, not
/// errors; these codes cover contract violations and malformed input.
enum class Errc {
  LevelTooSmall,
  CycleDetected,
  UnknownIdentifier,
  BottomNotLeast,
  SizeLimit,
  ForeignUpperSet,
  NotMonotone,
  MissingValue,
  DifferentPosets,
  NotAChain,
  NonDyadicWeight,
  DepthTooSmall,
  LevelMismatch,
  NotBoundedComplete,
  OutOfRange,
  ParseError,
  InvariantViolation,
  IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace valord
