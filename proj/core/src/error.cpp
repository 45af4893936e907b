#include "sparsepois/error.hpp"

namespace sparsepois {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::BadIntensity: return "BadIntensity";
    case ErrorCode::BadSparsity: return "BadSparsity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::BadEps: return "BadEps";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PackingBudgetExceeded: return "PackingBudgetExceeded";
  }
  return "Unknown";
}

}  // namespace sparsepois
