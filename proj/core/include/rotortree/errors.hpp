#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotortree {

enum class ErrorCode {
  InvalidArgument,
  RepeatedLetter,
  LetterOutOfRange,
  AtOrigin,
  BudgetExceeded,
  NotEvenlyDivisible,
  ParityViolation,
  OddHorizon,
  DegenerateK,
  SchedulePastHorizon,
  FrozenTable,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code lets callers (the CLI in
/// particular) map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rotortree
