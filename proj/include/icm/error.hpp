#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icm {

enum class ErrorCode {
  CapExceeded,
  NotSupported,
  NotIrreducible,
  TowerMismatch,
  NotFiniteColength,
  ZeroDivisor,
  ZeroModule,
  RankDeficient,
  NoContractingGenerator,
  DepthExceeded,
  ResampleLimit,
  FitUnstable,
  NotMPrimary,
  NotMonomial,
  AssertionFailure,
  ParseError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Raised when an identity the engine relies on internally does not hold.
[[noreturn]] inline void engine_assert_failed(const std::string& what) {
  throw Error(ErrorCode::AssertionFailure, what);
}

}  // namespace icm
