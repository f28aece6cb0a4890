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

#ifndef WINOINT_WINOGRAD_H_
#define WINOINT_WINOGRAD_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "winoint/gauss_int.h"
#include "winoint/grid.h"
#include "winoint/ratio.h"

namespace winoint {

enum class AlgorithmId { kRat2x2, kRat4x4, kCplx4x4 };

// "rat2x2", "rat4x4", "cplx4x4".
std::string_view AlgorithmName(AlgorithmId id);
AlgorithmId ParseAlgorithmId(std::string_view name);

struct Position {
  int row = 0;
  int col = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

// Conjugate structure of a transformed t×t grid. index_mirror[i] is the index
// whose row/column holds the conjugate of row/column i (i itself for indices
// whose rows are rational). The value at (mirror[i], mirror[j]) is the
// conjugate of the value at (i, j); the lexicographically smaller position of
// each such pair is its primary.
struct ConjLayout {
  std::vector<int> index_mirror;
  std::vector<Position> rational_positions;
  std::vector<std::pair<Position, Position>> pair_positions;  // (primary, mirror)

  int side() const { return static_cast<int>(index_mirror.size()); }
  Position Mirror(Position p) const {
    return {index_mirror[p.row], index_mirror[p.col]};
  }
  bool IsRationalPosition(Position p) const { return Mirror(p) == p; }
};

ConjLayout MakeConjLayout(std::vector<int> index_mirror);

// Fixed transform matrices for one F(m×m, 3×3) algorithm. g_int is the
// filter transform scaled element-wise by filter_scale so that every entry is
// a Gaussian integer; outputs are divided by filter_scale once per 1-D stage.
struct WinoAlgorithm {
  AlgorithmId id;
  std::string name;
  int m;
  int r;
  int t;
  Grid<GaussInt> bt;     // t×t
  Grid<GaussInt> g_int;  // t×r
  Grid<GaussInt> at;     // m×t
  int64_t filter_scale;
  int64_t output_divisor;  // filter_scale²
  ConjLayout layout;

  bool is_complex() const { return !layout.pair_positions.empty(); }
};

const WinoAlgorithm& Algorithm(AlgorithmId id);
const std::vector<AlgorithmId>& AllAlgorithms();

// Dense complex matrix product using only constant multiplications.
Grid<GaussInt> MatMul(const Grid<GaussInt>& a, const Grid<GaussInt>& b);
Grid<GaussInt> ToGauss(const Grid<int64_t>& g);

bool SatisfiesLayout(const Grid<GaussInt>& x, const ConjLayout& layout);

// W = G_int · g · G_intᵀ for a 3×3 filter with entries in [−255, 255].
Grid<GaussInt> FilterTransform(const Grid<int64_t>& g,
                               const WinoAlgorithm& algorithm);

// D = Bᵀ · d · B for a t×t tile.
Grid<GaussInt> ActivationTransform(const Grid<int64_t>& d,
                                   const WinoAlgorithm& algorithm);

enum class Rounding {
  kExact,             // divisibility is asserted
  kHalfAwayFromZero,  // lossy (precision-scaled) paths
};

// Y = Aᵀ · M · A / output_divisor, dividing by filter_scale after each 1-D
// stage (a right shift by 1 for F(2×2,3×3)). Only real parts are computed and
// only primary positions of M are read; mirror positions are implied by the
// layout, which M must satisfy.
Grid<int32_t> OutputTransform(const Grid<GaussInt>& m,
                              const WinoAlgorithm& algorithm,
                              Rounding rounding = Rounding::kExact);

// Divides by a positive divisor under the given rounding mode.
int64_t DivideRounded(int64_t value, int64_t divisor, Rounding rounding);

// 1 + ceil(log2(magnitude + 1)): signed width holding ±magnitude.
int SignedBitWidth(int64_t magnitude);
// ceil(log2(x)) for x ≥ 1.
int CeilLog2(int64_t x);

// Worst-case magnitudes of a transformed grid. For complex entries the real
// and imaginary parts are bounded separately and the larger is reported.
struct RangeReport {
  Grid<int64_t> magnitude;
  Grid<int> bits;
  int64_t max_magnitude = 0;
  int max_bits = 0;
  int widening_bits = 0;
  bool complex_components = false;
};

RangeReport WorstCaseRanges(const WinoAlgorithm& algorithm,
                            int64_t weight_bound);
RangeReport WorstCaseActivationRanges(const WinoAlgorithm& algorithm,
                                      int64_t input_bound);

// General multiplications per tile per channel: t² for rational algorithms,
// rational positions + 3 per conjugate pair otherwise.
int GeneralMulsPerTile(const WinoAlgorithm& algorithm);

// m²r² / GeneralMulsPerTile.
Ratio ReductionRatio(const WinoAlgorithm& algorithm);

// (red_a/bits_a) / (red_b/bits_b) − 1, in percent.
double EfficiencyGain(Ratio red_a, int bits_a, Ratio red_b, int bits_b);

}  // namespace winoint

#endif  // WINOINT_WINOGRAD_H_
