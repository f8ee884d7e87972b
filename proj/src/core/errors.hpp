#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spadimo {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  EmptyInput,
  SingularMatrix,
  DegenerateColumn,
  DegenerateWeights,
  ZeroDirection,
  ZeroCovariance,
  EmptySelection,
  DegenerateComponent,
  NotOutlying,
  IoError,
  UsageError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace spadimo
