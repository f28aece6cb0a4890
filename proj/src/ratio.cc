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

#include "winoint/ratio.h"

#include <cstdlib>

namespace winoint {

std::string FormatFixed(Ratio value, int places) {
  if (places < 0 || places > 12) {
    throw WinoError(ErrorCode::kInvalidArgument, "unsupported decimal places");
  }
  int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value.num < 0;
  const int64_t magnitude = negative ? -value.num : value.num;
  // round(|num|·scale / den), ties away from zero
  const int64_t scaled =
      CheckedAdd(CheckedMul(CheckedMul(magnitude, scale), 2), value.den) /
      CheckedMul(value.den, 2);
  std::string digits = std::to_string(scaled / scale);
  if (places > 0) {
    std::string frac = std::to_string(scaled % scale);
    digits += "." + std::string(places - frac.size(), '0') + frac;
  }
  return (negative && scaled != 0 ? "-" : "") + digits;
}

}  // namespace winoint
