#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entorder {

enum class Errc {
  NotSorted,
  NotNormalized,
  NonPositive,
  QOutOfRange,
  DomainError,
  NonPositiveP,
  NotFound,
  ConditionViolated,
  TruncationUnsafe,
  WindowTooSmall,
  TooShort,
  InvalidFamily,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Library-wide exception. Carries a machine-readable code and, for parse
/// failures, the 1-based line number in the offending file.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotSorted: return "NotSorted";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NonPositive: return "NonPositive";
    case Errc::QOutOfRange: return "QOutOfRange";
    case Errc::DomainError: return "DomainError";
    case Errc::NonPositiveP: return "NonPositiveP";
    case Errc::NotFound: return "NotFound";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::TruncationUnsafe: return "TruncationUnsafe";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::TooShort: return "TooShort";
    case Errc::InvalidFamily: return "InvalidFamily";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace entorder
