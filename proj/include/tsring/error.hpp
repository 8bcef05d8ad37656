#pragma once

#include <stdexcept>
#include <string>

namespace tsring {

enum class ErrorCode {
  BadInput,
  NotPrime,
  BadOrder,
  TwoBlocked,
  BadLevel,
  NotInvertible,
  BadGaloisIndex,
  ParamsMismatch,
  ScalarMismatch,
  CharacterIllDefined,
  UnrecognizedShape,
  ShapeMismatch,
  NotUnit,
  CharIsP,
  ScanTooLarge,
  Violation,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code says which contract broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsring
