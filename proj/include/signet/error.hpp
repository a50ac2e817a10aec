#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace signet {

enum class ErrorCode {
  SortMismatch,
  MalformedTuple,
  DuplicateBoundVar,
  ParseError,
  NotAFormula,
  NotFree,
  MixedSorts,
  ArityTooSmall,
  UnknownId,
  NotATruthSet,
  IncompleteAssignment,
  ResourceLimit,
  ProfileMismatch,
  BudgetExceeded,
  IoFailure,
  MalformedSession,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every engine failure is reported through this exception; the code is the
// stable identifier surfaced by the CLI and the HTTP service.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> column = std::nullopt)
      : std::runtime_error(message), code_(code), column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  // 1-based code-point column, set for parse errors only.
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> column_;
};

}  // namespace signet
