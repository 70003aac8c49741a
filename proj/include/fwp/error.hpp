#pragma once

#include <stdexcept>
#include <string>

namespace fwp {

enum class ErrorCode {
  kOk = 0,
  kInvalidArgument,
  kParse,
  kNotAnEdge,
  kDegeneratePoints,
  kDegenerateQuad,
  kDegenerateImage,
  kMonotonicityViolation,
  kNotDifferentiable,
  kNotInP,
  kIo,
  kInternal,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fwp
