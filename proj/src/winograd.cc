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

#include "winoint/winograd.h"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace winoint {
namespace {

constexpr GaussInt kI{0, 1};

Grid<GaussInt> Literal(std::initializer_list<std::initializer_list<GaussInt>> rows) {
  return Grid<GaussInt>(rows);
}

WinoAlgorithm MakeRat2x2() {
  WinoAlgorithm a{
      .id = AlgorithmId::kRat2x2,
      .name = "F(2x2,3x3) rational",
      .m = 2,
      .r = 3,
      .t = 4,
      .bt = Literal({{1, 0, -1, 0},  //
                     {0, 1, 1, 0},
                     {0, -1, 1, 0},
                     {0, 1, 0, -1}}),
      // 2 × G
      .g_int = Literal({{2, 0, 0},  //
                        {1, 1, 1},
                        {1, -1, 1},
                        {0, 0, 2}}),
      .at = Literal({{1, 1, 1, 0},  //
                     {0, 1, -1, -1}}),
      .filter_scale = 2,
      .output_divisor = 4,
      .layout = MakeConjLayout({0, 1, 2, 3}),
  };
  return a;
}

WinoAlgorithm MakeRat4x4() {
  WinoAlgorithm a{
      .id = AlgorithmId::kRat4x4,
      .name = "F(4x4,3x3) rational",
      .m = 4,
      .r = 3,
      .t = 6,
      .bt = Literal({{4, 0, -5, 0, 1, 0},
                     {0, -4, -4, 1, 1, 0},
                     {0, 4, -4, -1, 1, 0},
                     {0, -2, -1, 2, 1, 0},
                     {0, 2, -1, -2, 1, 0},
                     {0, 4, 0, -5, 0, 1}}),
      // 24 × G, points {0, 1, −1, 2, −2}
      .g_int = Literal({{6, 0, 0},
                        {-4, -4, -4},
                        {-4, 4, -4},
                        {1, 2, 4},
                        {1, -2, 4},
                        {0, 0, 24}}),
      .at = Literal({{1, 1, 1, 1, 1, 0},
                     {0, 1, -1, 2, -2, 0},
                     {0, 1, 1, 4, 4, 0},
                     {0, 1, -1, 8, -8, 1}}),
      .filter_scale = 24,
      .output_divisor = 576,
      .layout = MakeConjLayout({0, 1, 2, 3, 4, 5}),
  };
  return a;
}

WinoAlgorithm MakeCplx4x4() {
  const GaussInt i = kI;
  const GaussInt mi = -kI;
  WinoAlgorithm a{
      .id = AlgorithmId::kCplx4x4,
      .name = "F(4x4,3x3) complex",
      .m = 4,
      .r = 3,
      .t = 6,
      .bt = Literal({{1, 0, 0, 0, -1, 0},
                     {0, 1, 1, 1, 1, 0},
                     {0, -1, 1, -1, 1, 0},
                     {0, mi, -1, i, 1, 0},
                     {0, i, -1, mi, 1, 0},
                     {0, -1, 0, 0, 0, 1}}),
      // 4 × G, points {0, 1, −1, i, −i}
      .g_int = Literal({{4, 0, 0},
                        {1, 1, 1},
                        {1, -1, 1},
                        {1, i, -1},
                        {1, mi, -1},
                        {0, 0, 4}}),
      .at = Literal({{1, 1, 1, 1, 1, 0},
                     {0, 1, -1, i, mi, 0},
                     {0, 1, 1, -1, -1, 0},
                     {0, 1, -1, mi, i, 1}}),
      .filter_scale = 4,
      .output_divisor = 16,
      .layout = MakeConjLayout({0, 1, 2, 4, 3, 5}),
  };
  return a;
}

// Real part of c·v without forming the imaginary part.
int64_t RealOfProduct(GaussInt c, GaussInt v) {
  if (c.im == 0) return CheckedMul(c.re, v.re);
  return CheckedSub(CheckedMul(c.re, v.re), CheckedMul(c.im, v.im));
}

// Value of M at (i, j), reading the primary position and conjugating when
// (i, j) is a mirror.
GaussInt ReadThroughLayout(const Grid<GaussInt>& m, const ConjLayout& layout,
                           int i, int j) {
  const Position p{i, j};
  const Position q = layout.Mirror(p);
  if (p == q || std::pair(p.row, p.col) < std::pair(q.row, q.col)) {
    return m(i, j);
  }
  return Conj(m(q.row, q.col));
}

RangeReport RangesOf(const Grid<GaussInt>& left, int64_t bound,
                     int64_t widening_scale) {
  const int t = left.rows();
  const int k = left.cols();
  RangeReport report;
  report.magnitude = Grid<int64_t>(t, t);
  report.bits = Grid<int>(t, t);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      int64_t re_bound = 0;
      int64_t im_bound = 0;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          const GaussInt coef = ConstMul(left(i, a), left(j, b));
          re_bound += std::llabs(coef.re);
          im_bound += std::llabs(coef.im);
          if (coef.im != 0) report.complex_components = true;
        }
      }
      const int64_t mag = CheckedMul(std::max(re_bound, im_bound), bound);
      report.magnitude(i, j) = mag;
      report.bits(i, j) = SignedBitWidth(mag);
      report.max_magnitude = std::max(report.max_magnitude, mag);
      report.max_bits = std::max(report.max_bits, report.bits(i, j));
    }
  }
  report.widening_bits = CeilLog2(widening_scale);
  return report;
}

}  // namespace

std::string_view AlgorithmName(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kRat2x2:
      return "rat2x2";
    case AlgorithmId::kRat4x4:
      return "rat4x4";
    case AlgorithmId::kCplx4x4:
      return "cplx4x4";
  }
  return "unknown";
}

AlgorithmId ParseAlgorithmId(std::string_view name) {
  for (AlgorithmId id : AllAlgorithms()) {
    if (AlgorithmName(id) == name) return id;
  }
  throw WinoError(ErrorCode::kInvalidArgument,
                  "unknown algorithm '" + std::string(name) + "'");
}

ConjLayout MakeConjLayout(std::vector<int> index_mirror) {
  ConjLayout layout;
  layout.index_mirror = std::move(index_mirror);
  const int t = layout.side();
  for (int i = 0; i < t; ++i) {
    const int mi = layout.index_mirror[i];
    if (mi < 0 || mi >= t || layout.index_mirror[mi] != i) {
      throw WinoError(ErrorCode::kInvalidArgument,
                      "index mirror must be an involution");
    }
  }
  for (int r = 0; r < t; ++r) {
    for (int c = 0; c < t; ++c) {
      const Position p{r, c};
      const Position q = layout.Mirror(p);
      if (p == q) {
        layout.rational_positions.push_back(p);
      } else if (std::pair(r, c) < std::pair(q.row, q.col)) {
        layout.pair_positions.emplace_back(p, q);
      }
    }
  }
  return layout;
}

const WinoAlgorithm& Algorithm(AlgorithmId id) {
  static const WinoAlgorithm rat2x2 = MakeRat2x2();
  static const WinoAlgorithm rat4x4 = MakeRat4x4();
  static const WinoAlgorithm cplx4x4 = MakeCplx4x4();
  switch (id) {
    case AlgorithmId::kRat2x2:
      return rat2x2;
    case AlgorithmId::kRat4x4:
      return rat4x4;
    case AlgorithmId::kCplx4x4:
      return cplx4x4;
  }
  throw WinoError(ErrorCode::kInvalidArgument, "unsupported algorithm id");
}

const std::vector<AlgorithmId>& AllAlgorithms() {
  static const std::vector<AlgorithmId> ids = {
      AlgorithmId::kRat2x2, AlgorithmId::kRat4x4, AlgorithmId::kCplx4x4};
  return ids;
}

Grid<GaussInt> MatMul(const Grid<GaussInt>& a, const Grid<GaussInt>& b) {
  if (a.cols() != b.rows()) {
    throw WinoError(ErrorCode::kShapeMismatch, "matrix product extents");
  }
  Grid<GaussInt> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const GaussInt aik = a(i, k);
      if (aik == GaussInt{}) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += ConstMul(aik, b(k, j));
    }
  }
  return out;
}

Grid<GaussInt> ToGauss(const Grid<int64_t>& g) {
  Grid<GaussInt> out(g.rows(), g.cols());
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) out(r, c) = GaussInt{g(r, c)};
  return out;
}

bool SatisfiesLayout(const Grid<GaussInt>& x, const ConjLayout& layout) {
  if (x.rows() != layout.side() || x.cols() != layout.side()) return false;
  for (const Position& p : layout.rational_positions) {
    if (!x(p.row, p.col).is_rational()) return false;
  }
  for (const auto& [primary, mirror] : layout.pair_positions) {
    if (x(mirror.row, mirror.col) != Conj(x(primary.row, primary.col))) {
      return false;
    }
  }
  return true;
}

Grid<GaussInt> FilterTransform(const Grid<int64_t>& g,
                               const WinoAlgorithm& algorithm) {
  if (g.rows() != algorithm.r || g.cols() != algorithm.r) {
    throw WinoError(ErrorCode::kShapeMismatch, "filter must be 3x3");
  }
  for (int64_t v : g.data()) {
    if (v < -255 || v > 255) {
      throw WinoError(ErrorCode::kOutOfRange,
                      "filter value " + std::to_string(v) + " outside int9");
    }
  }
  return MatMul(MatMul(algorithm.g_int, ToGauss(g)),
                algorithm.g_int.Transposed());
}

Grid<GaussInt> ActivationTransform(const Grid<int64_t>& d,
                                   const WinoAlgorithm& algorithm) {
  if (d.rows() != algorithm.t || d.cols() != algorithm.t) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    "tile must be " + std::to_string(algorithm.t) + "x" +
                        std::to_string(algorithm.t));
  }
  return MatMul(MatMul(algorithm.bt, ToGauss(d)), algorithm.bt.Transposed());
}

int64_t DivideRounded(int64_t value, int64_t divisor, Rounding rounding) {
  if (divisor <= 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "divisor must be positive");
  }
  const bool pow2 = std::has_single_bit(static_cast<uint64_t>(divisor));
  const int shift = std::countr_zero(static_cast<uint64_t>(divisor));
  if (rounding == Rounding::kExact) {
    if (value % divisor != 0) {
      throw WinoError(ErrorCode::kDivisibility,
                      std::to_string(value) + " is not divisible by " +
                          std::to_string(divisor));
    }
    return pow2 ? (value >> shift) : value / divisor;
  }
  const int64_t mag = value < 0 ? CheckedSub(0, value) : value;
  const int64_t q = pow2 ? (CheckedAdd(mag, divisor >> 1) >> shift)
                         : CheckedAdd(CheckedMul(mag, 2), divisor) /
                               CheckedMul(divisor, 2);
  return value < 0 ? -q : q;
}

Grid<int32_t> OutputTransform(const Grid<GaussInt>& m,
                              const WinoAlgorithm& algorithm,
                              Rounding rounding) {
  const ConjLayout& layout = algorithm.layout;
  if (!SatisfiesLayout(m, layout)) {
    throw WinoError(ErrorCode::kLayoutViolation,
                    "Hadamard grid breaks the conjugate layout of " +
                        algorithm.name);
  }
  const Grid<GaussInt>& at = algorithm.at;
  const int t = algorithm.t;
  const int out = algorithm.m;
  const int64_t s = algorithm.filter_scale;
  const auto& mirror = layout.index_mirror;

  // Stage 1: P = Aᵀ · M over primary columns. Columns whose index is its own
  // mirror are real; a paired column's partner is its conjugate.
  Grid<GaussInt> p(out, t);
  for (int r = 0; r < out; ++r) {
    for (int j = 0; j < t; ++j) {
      if (mirror[j] < j) continue;
      if (mirror[j] == j) {
        int64_t acc = 0;
        for (int i = 0; i < t; ++i) {
          acc = CheckedAdd(acc, RealOfProduct(at(r, i), ReadThroughLayout(m, layout, i, j)));
        }
        p(r, j) = GaussInt{DivideRounded(acc, s, rounding)};
      } else {
        GaussInt acc;
        for (int i = 0; i < t; ++i) {
          acc += ConstMul(at(r, i), ReadThroughLayout(m, layout, i, j));
        }
        p(r, j) = GaussInt{DivideRounded(acc.re, s, rounding),
                           DivideRounded(acc.im, s, rounding)};
      }
    }
  }

  // Stage 2: Y = P · A, real part only. A column pair (j, mirror j)
  // contributes P·a + conj(P·a) = 2·Re(P·a).
  Grid<int32_t> y(out, out);
  for (int r = 0; r < out; ++r) {
    for (int c = 0; c < out; ++c) {
      int64_t acc = 0;
      for (int j = 0; j < t; ++j) {
        if (mirror[j] < j) continue;
        const int64_t term = RealOfProduct(at(c, j), p(r, j));
        acc = CheckedAdd(acc, mirror[j] == j ? term : CheckedMul(term, 2));
      }
      y(r, c) = CheckedNarrow32(DivideRounded(acc, s, rounding));
    }
  }
  return y;
}

int SignedBitWidth(int64_t magnitude) {
  return 1 + std::bit_width(static_cast<uint64_t>(std::llabs(magnitude)));
}

int CeilLog2(int64_t x) {
  if (x < 1) throw WinoError(ErrorCode::kInvalidArgument, "log2 of non-positive");
  return std::bit_width(static_cast<uint64_t>(x - 1));
}

RangeReport WorstCaseRanges(const WinoAlgorithm& algorithm,
                            int64_t weight_bound) {
  if (weight_bound <= 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "weight bound must be positive");
  }
  return RangesOf(algorithm.g_int, weight_bound,
                  algorithm.filter_scale * algorithm.filter_scale);
}

RangeReport WorstCaseActivationRanges(const WinoAlgorithm& algorithm,
                                      int64_t input_bound) {
  if (input_bound <= 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "input bound must be positive");
  }
  return RangesOf(algorithm.bt, input_bound, 1);
}

int GeneralMulsPerTile(const WinoAlgorithm& algorithm) {
  const auto& layout = algorithm.layout;
  return static_cast<int>(layout.rational_positions.size() +
                          3 * layout.pair_positions.size());
}

Ratio ReductionRatio(const WinoAlgorithm& algorithm) {
  const int64_t direct = static_cast<int64_t>(algorithm.m) * algorithm.m *
                         algorithm.r * algorithm.r;
  return Ratio(direct, GeneralMulsPerTile(algorithm));
}

double EfficiencyGain(Ratio red_a, int bits_a, Ratio red_b, int bits_b) {
  if (red_a.num <= 0 || red_b.num <= 0 || bits_a <= 0 || bits_b <= 0) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "efficiency gain inputs must be positive");
  }
  // (a.num/a.den/bits_a) / (b.num/b.den/bits_b)
  const long double num = static_cast<long double>(red_a.num) * red_b.den * bits_b;
  const long double den = static_cast<long double>(red_a.den) * red_b.num * bits_a;
  return static_cast<double>((num / den - 1.0L) * 100.0L);
}

}  // namespace winoint
