#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tricolor {

enum class ErrorCode {
  // Instance validation / parsing.
  NTooSmall,
  LengthMismatch,
  NotABijection,
  MatchingsOverlap,
  Parse,
  // Argument contracts.
  InvalidTargetSum,
  BudgetTooSmall,
  MatchingWrongSize,
  NotAMatching,
  BadParity,
  OutOfRange,
  VertexSaturated,
  StartSaturated,
  Disconnected,
  NotConnected,
  PreconditionViolated,
  KOutOfRange,
  A3Zero,
  TooLarge,
  GenerationBudgetExceeded,
  // Engine failures. These indicate a bug, never bad input.
  IterationGuardExceeded,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors raised by the engine's own consistency checks.
  bool is_internal() const noexcept {
    return code_ == ErrorCode::IterationGuardExceeded || code_ == ErrorCode::InternalInvariant;
  }

 private:
  ErrorCode code_;
};

/// Throws InternalInvariant with `what` when `cond` is false.
inline void ensure(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::InternalInvariant, what);
}

}  // namespace tricolor
