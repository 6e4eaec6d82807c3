#pragma once

#include <stdexcept>
#include <string>

namespace cf {

// Mirrors cf_status in the C API; values are stable.
enum class ErrorCode : int {
  ok = 0,
  invalid_input = 1,
  verification_failed = 2,
  resource_limit = 3,
  undetermined = 4,
  inexact_division = 5,
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(ErrorCode::invalid_input, what) {}
};

struct InexactDivision : Error {
  explicit InexactDivision(const std::string& what) : Error(ErrorCode::inexact_division, what) {}
};

struct VerificationFailure : Error {
  explicit VerificationFailure(const std::string& what) : Error(ErrorCode::verification_failed, what) {}
};

struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& what) : Error(ErrorCode::resource_limit, what) {}
};

struct Undetermined : Error {
  explicit Undetermined(const std::string& what) : Error(ErrorCode::undetermined, what) {}
};

}  // namespace cf
