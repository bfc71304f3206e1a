#pragma once
#include <stdexcept>
#include <string>

namespace blowuplab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdmissibilityError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct BracketError : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
// ratio recursion hit |r_n| < 1e-300; callers fall back to series_coeffs
struct DegenerateRatioError : NumericalError { using NumericalError::NumericalError; };

}  // namespace blowuplab
