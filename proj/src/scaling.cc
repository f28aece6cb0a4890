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

#include "winoint/scaling.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>

namespace winoint {
namespace {

int64_t RoundShiftHalfAway(int64_t value, int shift) {
  const int64_t mag = value < 0 ? CheckedSub(0, value) : value;
  const int64_t q =
      shift == 0 ? mag : CheckedAdd(mag, int64_t{1} << (shift - 1)) >> shift;
  return value < 0 ? -q : q;
}

int64_t ComponentMagnitude(GaussInt x) {
  return std::max(std::llabs(x.re), std::llabs(x.im));
}

}  // namespace

Ratio ScaleFactor::value() const {
  if (is_none()) return Ratio(1);
  return Ratio(n, int64_t{1} << shift);
}

uint8_t ScaleFactor::Encode() const {
  if (is_none()) return 0;
  return static_cast<uint8_t>((n << 2) | (shift - 4));
}

ScaleFactor ScaleFactor::Decode(uint8_t encoded) {
  if (encoded == 0) return None();
  if (encoded > 0x3F || (encoded >> 2) == 0) {
    throw WinoError(ErrorCode::kOutOfRange,
                    "invalid 6-bit scale factor code " + std::to_string(encoded));
  }
  return {encoded >> 2, (encoded & 0x3) + 4};
}

ScaleFactor ComputeScaleFactor(int64_t max_magnitude) {
  if (max_magnitude <= 0 || max_magnitude > kMaxScalableMagnitude) {
    throw WinoError(ErrorCode::kOutOfRange,
                    "max magnitude " + std::to_string(max_magnitude) +
                        " outside (0, " + std::to_string(kMaxScalableMagnitude) + "]");
  }
  if (max_magnitude <= kInt9Max) return ScaleFactor::None();
  const int64_t x = kInt9Max * 128 / max_magnitude;
  const int y = std::bit_width(static_cast<uint64_t>(x)) - 1;
  int64_t n = y >= 4 ? x >> (y - 4) : x << (4 - y);
  int shift = 11 - y;
  while (n > 15) {
    n /= 2;
    --shift;
  }
  return {static_cast<int>(n), shift};
}

Grid<ScaleFactor> ScaleFactorsForFilter(std::span<const Grid<GaussInt>> channels) {
  if (channels.empty()) {
    throw WinoError(ErrorCode::kInvalidArgument, "filter has no channels");
  }
  const int rows = channels.front().rows();
  const int cols = channels.front().cols();
  Grid<ScaleFactor> factors(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int64_t mag = 0;
      for (const auto& ch : channels) mag = std::max(mag, ComponentMagnitude(ch(r, c)));
      factors(r, c) = mag == 0 ? ScaleFactor::None() : ComputeScaleFactor(mag);
    }
  }
  return factors;
}

int64_t ScaleWeight(int64_t weight, ScaleFactor factor) {
  if (factor.is_none()) return weight;
  return RoundShiftHalfAway(CheckedMul(weight, factor.n), factor.shift);
}

std::vector<Grid<GaussInt>> ApplyScaling(std::span<const Grid<GaussInt>> channels,
                                         const Grid<ScaleFactor>& factors) {
  std::vector<Grid<GaussInt>> out;
  out.reserve(channels.size());
  for (const auto& ch : channels) {
    if (ch.rows() != factors.rows() || ch.cols() != factors.cols()) {
      throw WinoError(ErrorCode::kShapeMismatch, "factor grid extent");
    }
    Grid<GaussInt> scaled(ch.rows(), ch.cols());
    for (int r = 0; r < ch.rows(); ++r) {
      for (int c = 0; c < ch.cols(); ++c) {
        const ScaleFactor f = factors(r, c);
        const GaussInt v{ScaleWeight(ch(r, c).re, f), ScaleWeight(ch(r, c).im, f)};
        if (ComponentMagnitude(v) > kInt9Max) {
          throw WinoError(ErrorCode::kOutOfRange,
                          "scaled weight leaves the int9 range");
        }
        scaled(r, c) = v;
      }
    }
    out.push_back(std::move(scaled));
  }
  return out;
}

InverseFactor ReverseFactor(ScaleFactor factor) {
  if (factor.is_none()) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "no reverse factor for the no-scaling sentinel");
  }
  for (int q = 7; q >= 4; --q) {
    // round(2^(q+shift) / n), ties up
    const int64_t num = int64_t{1} << (q + factor.shift);
    const int64_t m = (2 * num + factor.n) / (2 * factor.n);
    if (m <= 255) return {static_cast<int>(m), q};
  }
  // Only 1/16 (n = 8, shift = 7) lands here: its reciprocal needs m = 256 at
  // q = 4. The closest 8-bit multiplier is used.
  return {255, 4};
}

int64_t ApplyReverse(int64_t value, InverseFactor inverse) {
  return RoundShiftHalfAway(CheckedMul(value, inverse.m), inverse.q);
}

void ApplyReverseGrid(Grid<GaussInt>& grid, const Grid<ScaleFactor>& factors) {
  if (grid.rows() != factors.rows() || grid.cols() != factors.cols()) {
    throw WinoError(ErrorCode::kShapeMismatch, "factor grid extent");
  }
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (factors(r, c).is_none()) continue;
      const InverseFactor inv = ReverseFactor(factors(r, c));
      grid(r, c) = {ApplyReverse(grid(r, c).re, inv), ApplyReverse(grid(r, c).im, inv)};
    }
  }
}

std::vector<ScaleTableEntry> ScaleTable() {
  // Factor chosen for the largest F(2×2,3×3) magnitude 9·255.
  const Ratio floor_value = ComputeScaleFactor(9 * kInt9Max).value();
  std::vector<ScaleTableEntry> table;
  for (int n = 1; n <= 15; ++n) {
    for (int p = 0; p <= 3; ++p) {
      ScaleTableEntry e;
      e.n = n;
      e.p = p;
      e.value = Ratio(n, int64_t{1} << (p + 4));
      e.text = FormatFixed(e.value, 5);
      e.out_of_range = e.value.num * floor_value.den < floor_value.num * e.value.den;
      e.duplicate = p >= 1 && n % 2 == 0;
      table.push_back(e);
    }
  }
  return table;
}

ErrorReport StaticErrorSweep(std::span<const int64_t> population) {
  if (population.empty()) {
    throw WinoError(ErrorCode::kInvalidArgument, "empty weight population");
  }
  ErrorReport report;
  report.records.reserve(population.size());
  double num_sum = 0.0;
  double prop_sum = 0.0;
  for (int64_t w : population) {
    if (w <= kInt9Max || w > kMaxScalableMagnitude) {
      throw WinoError(ErrorCode::kOutOfRange,
                      "weight " + std::to_string(w) + " is not in the scalable range");
    }
    ErrorRecord rec;
    rec.weight = w;
    rec.factor = ComputeScaleFactor(w);
    rec.down = ScaleWeight(w, rec.factor);
    rec.up = ApplyReverse(rec.down, ReverseFactor(rec.factor));
    rec.numerical_error = std::llabs(rec.up - w);
    rec.proportional_error =
        static_cast<double>(rec.numerical_error) / static_cast<double>(w);
    num_sum += static_cast<double>(rec.numerical_error);
    prop_sum += rec.proportional_error;
    report.records.push_back(rec);
  }
  report.mean_numerical = num_sum / static_cast<double>(population.size());
  report.mean_proportional = prop_sum / static_cast<double>(population.size());
  return report;
}

ErrorReport StaticErrorSweep(int64_t lo, int64_t hi) {
  std::vector<int64_t> population;
  for (int64_t w = lo; w <= hi; ++w) population.push_back(w);
  return StaticErrorSweep(population);
}

void WriteErrorCsv(const ErrorReport& report, std::ostream& os) {
  char buf[160];
  os << "weight,n,shift,down,up,num_err,prop_err\n";
  for (const ErrorRecord& r : report.records) {
    std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%lld,%lld,%lld,%.6f\n",
                  static_cast<long long>(r.weight), r.factor.n, r.factor.shift,
                  static_cast<long long>(r.down), static_cast<long long>(r.up),
                  static_cast<long long>(r.numerical_error), r.proportional_error);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf), "#mean,%.5f,%.6f\n", report.mean_numerical,
                report.mean_proportional);
  os << buf;
}

double BitwidthReductionPercent(int from_bits, int to_bits) {
  if (from_bits <= 0 || to_bits <= 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "bit widths must be positive");
  }
  return (1.0 - static_cast<double>(to_bits) / from_bits) * 100.0;
}

}  // namespace winoint
