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

#include "winoint/error.h"

namespace winoint {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kOutOfRange:
      return "out of range";
    case ErrorCode::kOverflow:
      return "overflow";
    case ErrorCode::kShapeMismatch:
      return "shape mismatch";
    case ErrorCode::kLayoutViolation:
      return "layout violation";
    case ErrorCode::kDivisibility:
      return "divisibility violation";
    case ErrorCode::kMalformedHeader:
      return "malformed header";
    case ErrorCode::kLengthMismatch:
      return "length mismatch";
    case ErrorCode::kUnknownDtype:
      return "unknown dtype";
    case ErrorCode::kIo:
      return "io error";
  }
  return "unknown error";
}

}  // namespace winoint
