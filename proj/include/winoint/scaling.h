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

#ifndef WINOINT_SCALING_H_
#define WINOINT_SCALING_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "winoint/gauss_int.h"
#include "winoint/grid.h"
#include "winoint/ratio.h"

namespace winoint {

// Largest magnitude a scaled Winograd-domain weight may have (int9).
inline constexpr int64_t kInt9Max = 255;
// Largest magnitude the n/2^shift scheme can bring back into int9 with n ≤ 15
// and shift ≤ 7: 16·255, the corner value of the complex F(4×4,3×3) filter.
inline constexpr int64_t kMaxScalableMagnitude = 4080;

// Downscale factor n / 2^shift, n ∈ [1,15], shift ∈ [4,7]. n == 0 is the
// "no scaling" sentinel. Encoded in 6 bits as (n << 2) | (shift − 4).
struct ScaleFactor {
  int n = 0;
  int shift = 0;

  static ScaleFactor None() { return {}; }
  bool is_none() const { return n == 0; }
  Ratio value() const;  // 1 for the sentinel

  uint8_t Encode() const;
  static ScaleFactor Decode(uint8_t encoded);

  friend bool operator==(const ScaleFactor&, const ScaleFactor&) = default;
};

// Reciprocal approximation m / 2^q, m ∈ [1,255], q ∈ [4,7].
struct InverseFactor {
  int m = 1;
  int q = 4;
  friend bool operator==(const InverseFactor&, const InverseFactor&) = default;
};

// x = floor(255·128 / mag), y = floor(log2 x), n = floor(x / 2^(y−4)),
// shift = 11 − y, then (n, shift) ← (floor(n/2), shift − 1) while n > 15.
// Magnitudes ≤ 255 need no scaling. Valid for mag ∈ (0, kMaxScalableMagnitude].
ScaleFactor ComputeScaleFactor(int64_t max_magnitude);

// One factor per grid position from the maximum over channels of
// max(|re|, |im|).
Grid<ScaleFactor> ScaleFactorsForFilter(std::span<const Grid<GaussInt>> channels);

// round_half_away(w · n / 2^shift); identity for the sentinel.
int64_t ScaleWeight(int64_t weight, ScaleFactor factor);

// Scales re and im of every channel; every result must land in [−255, 255].
std::vector<Grid<GaussInt>> ApplyScaling(std::span<const Grid<GaussInt>> channels,
                                         const Grid<ScaleFactor>& factors);

// Largest q ∈ [4,7] with m = round(2^(q+shift) / n) ≤ 255. The factor 1/16,
// reachable only from magnitudes above 3855, saturates to m = 255, q = 4.
InverseFactor ReverseFactor(ScaleFactor factor);

// round_half_away(v · m / 2^q) via a multiply, a rounding add and a shift on
// the magnitude.
int64_t ApplyReverse(int64_t value, InverseFactor inverse);

// Reverse-scales every non-sentinel position, re and im independently.
void ApplyReverseGrid(Grid<GaussInt>& grid, const Grid<ScaleFactor>& factors);

struct ScaleTableEntry {
  int n = 0;
  int p = 0;  // shift − 4
  Ratio value;
  std::string text;  // 5 decimals
  bool out_of_range = false;  // below 14/128, the factor for 9·255
  bool duplicate = false;     // same value exists with a smaller p
};

// All 60 (n, p) combinations, n-major.
std::vector<ScaleTableEntry> ScaleTable();

struct ErrorRecord {
  int64_t weight = 0;
  ScaleFactor factor;
  int64_t down = 0;
  int64_t up = 0;
  int64_t numerical_error = 0;
  double proportional_error = 0.0;
};

struct ErrorReport {
  std::vector<ErrorRecord> records;
  double mean_numerical = 0.0;
  double mean_proportional = 0.0;
};

// Down-then-up round trip of each weight through its own factor.
ErrorReport StaticErrorSweep(std::span<const int64_t> population);
ErrorReport StaticErrorSweep(int64_t lo, int64_t hi);

// weight,n,shift,down,up,num_err,prop_err then "#mean,<num>,<prop>".
void WriteErrorCsv(const ErrorReport& report, std::ostream& os);

// (1 − to/from) · 100.
double BitwidthReductionPercent(int from_bits, int to_bits);

}  // namespace winoint

#endif  // WINOINT_SCALING_H_
