/* Copyright 2026 The winoint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef WINOINT_ERROR_H_
#define WINOINT_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace winoint {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kOverflow,
  kShapeMismatch,
  kLayoutViolation,
  kDivisibility,
  kMalformedHeader,
  kLengthMismatch,
  kUnknownDtype,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure in the library surfaces as this exception; callers that need
// to distinguish causes switch on code().
class WinoError : public std::runtime_error {
 public:
  WinoError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Overflow-checked 64-bit arithmetic. Wraparound is never silent.
inline int64_t CheckedAdd(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw WinoError(ErrorCode::kOverflow, "int64 addition overflow");
  }
  return r;
}

inline int64_t CheckedSub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw WinoError(ErrorCode::kOverflow, "int64 subtraction overflow");
  }
  return r;
}

inline int64_t CheckedMul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw WinoError(ErrorCode::kOverflow, "int64 multiplication overflow");
  }
  return r;
}

inline int32_t CheckedNarrow32(int64_t v) {
  if (v < INT32_MIN || v > INT32_MAX) {
    throw WinoError(ErrorCode::kOverflow,
                    "value " + std::to_string(v) + " does not fit int32");
  }
  return static_cast<int32_t>(v);
}

}  // namespace winoint

#endif  // WINOINT_ERROR_H_
