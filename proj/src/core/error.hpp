#pragma once

#include <stdexcept>
#include <string>

namespace carbon_sched {

enum class ErrorCode {
  kValidation,
  kIo,
  kParse,
  kConstraintViolation,
  kSizeLimit,
  kIterationLimit,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kConstraintViolation: return "constraint_violation";
    case ErrorCode::kSizeLimit: return "size_limit";
    case ErrorCode::kIterationLimit: return "iteration_limit";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace carbon_sched
