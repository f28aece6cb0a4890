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

#ifndef WINOINT_RATIO_H_
#define WINOINT_RATIO_H_

#include <cstdint>
#include <numeric>
#include <string>

#include "winoint/error.h"

namespace winoint {

// Exact rational in lowest terms with a positive denominator.
struct Ratio {
  int64_t num = 0;
  int64_t den = 1;

  Ratio() = default;
  Ratio(int64_t n, int64_t d = 1) : num(n), den(d) {  // NOLINT
    if (d <= 0) throw WinoError(ErrorCode::kInvalidArgument, "ratio denominator must be positive");
    const int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double ToDouble() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Decimal rendering with round-half-away-from-zero on the exact value, e.g. 1/64 with 5
// places gives "0.01563" (binary printf would give the tie-to-even "0.01562").
std::string FormatFixed(Ratio value, int places);

}  // namespace winoint

#endif  // WINOINT_RATIO_H_
