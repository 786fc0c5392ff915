#pragma once

#include <stdexcept>
#include <string>

namespace oneclock {

// Machine-readable failure categories. The CLI maps every code to exit status 2
// (input error) except kVerification, which maps to 1.
enum class ErrorCode {
  kDomain,
  kValidation,
  kNegativeCost,
  kNegativeRate,
  kUnknownField,
  kDanglingReference,
  kDuplicateId,
  kIntervalOrder,
  kEmptyInterval,
  kMissingAction,
  kSyntax,
  kNonConvergence,
  kBudgetExceeded,
  kVerification,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::kDomain, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message,
                           ErrorCode code = ErrorCode::kValidation)
      : Error(code, message) {}
};

}  // namespace oneclock
