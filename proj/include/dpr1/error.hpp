#pragma once

#include <stdexcept>
#include <string>

namespace dpr1 {

enum class ErrorCode {
  invalid_argument,
  parse,
  solver,
  // b would need more than double the working precision (K_b >= 1/eps).
  extended_precision,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dpr1
