#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opdisk {

enum class ErrorCode {
  kNotHermitian,
  kSingularSpectrum,
  kNotPositive,
  kAlgebraMismatch,
  kInvalidPoint,
  kDegenerateProjection,
  kDifferentFibers,
  kBasePointMismatch,
  kNotHorizontal,
  kNotInGroup,
  kNotInDisk,
  kNotInHalfSpace,
  kNotOnSphere,
  kNotInRange,
  kNotRepresentable,
  kStepOutOfHalfSpace,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the verification harness) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opdisk
