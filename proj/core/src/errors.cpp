#include "rotortree/errors.hpp"

#include "rotortree/bigint.hpp"

namespace rotortree {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RepeatedLetter: return "RepeatedLetter";
    case ErrorCode::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorCode::AtOrigin: return "AtOrigin";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotEvenlyDivisible: return "NotEvenlyDivisible";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::OddHorizon: return "OddHorizon";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::SchedulePastHorizon: return "SchedulePastHorizon";
    case ErrorCode::FrozenTable: return "FrozenTable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

BigInt parse_bigint(const std::string& text) {
  BigInt v;
  const std::size_t digits = !text.empty() && text[0] == '-' ? 1 : 0;
  const bool well_formed =
      text.size() > digits && text.find_first_not_of("0123456789", digits) == std::string::npos;
  if (!well_formed || v.set_str(text, 10) != 0) {
    throw Error(ErrorCode::ParseError, "not a base-10 integer: '" + text + "'");
  }
  return v;
}

}  // namespace rotortree
