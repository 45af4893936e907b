#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparsepois {

enum class ErrorCode {
  EmptyClass,
  BadIntensity,
  BadSparsity,
  DimensionMismatch,
  IndexOutOfRange,
  AllZero,
  EmptySample,
  NonPositiveRate,
  BadEps,
  InvalidArgument,
  InvalidConfig,
  GridTooLarge,
  NoConvergence,
  PackingBudgetExceeded,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by exhausting a numerical or search budget rather
/// than by invalid input. The CLI maps these to exit code 3.
constexpr bool is_budget_error(ErrorCode code) noexcept {
  return code == ErrorCode::NoConvergence ||
         code == ErrorCode::PackingBudgetExceeded ||
         code == ErrorCode::GridTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sparsepois
