#pragma once

#include <stdexcept>
#include <string>

namespace restnorm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct BadOrder : Error { using Error::Error; };
struct NegativeC : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };
struct SpacingViolation : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct AccuracyGuard : Error { using Error::Error; };
struct BoundViolation : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace restnorm
