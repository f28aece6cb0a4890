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

#ifndef WINOINT_HADAMARD_H_
#define WINOINT_HADAMARD_H_

#include <cstdint>
#include <vector>

#include "winoint/gauss_int.h"
#include "winoint/grid.h"
#include "winoint/winograd.h"

namespace winoint {

// Channel-accumulated W ⊙ D for one (output tile, output channel). Rational
// positions hold plain sums; each conjugate pair keeps only its primary
// position, in unreduced Karatsuba form.
class HadamardAccumulator {
 public:
  explicit HadamardAccumulator(const WinoAlgorithm& algorithm);

  // Adds W ⊙ D for one input channel. Both operands must satisfy the
  // algorithm's conjugate layout.
  void Accumulate(const Grid<GaussInt>& w, const Grid<GaussInt>& d,
                  MulCounter& counter);

  // Combines each pair once and materializes its mirror as the conjugate.
  Grid<GaussInt> Finalize() const;

  int64_t channels_seen() const { return channels_seen_; }
  const std::vector<int64_t>& rational_acc() const { return rational_acc_; }
  const std::vector<KaratsubaPartial>& pair_acc() const { return pair_acc_; }

 private:
  const WinoAlgorithm* algorithm_;
  std::vector<int64_t> rational_acc_;
  std::vector<KaratsubaPartial> pair_acc_;
  int64_t channels_seen_ = 0;
};

}  // namespace winoint

#endif  // WINOINT_HADAMARD_H_
