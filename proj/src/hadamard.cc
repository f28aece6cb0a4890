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

#include "winoint/hadamard.h"

namespace winoint {

HadamardAccumulator::HadamardAccumulator(const WinoAlgorithm& algorithm)
    : algorithm_(&algorithm),
      rational_acc_(algorithm.layout.rational_positions.size(), 0),
      pair_acc_(algorithm.layout.pair_positions.size()) {}

void HadamardAccumulator::Accumulate(const Grid<GaussInt>& w,
                                     const Grid<GaussInt>& d,
                                     MulCounter& counter) {
  const ConjLayout& layout = algorithm_->layout;
  if (!SatisfiesLayout(w, layout) || !SatisfiesLayout(d, layout)) {
    throw WinoError(ErrorCode::kLayoutViolation,
                    "Hadamard operand breaks the conjugate layout of " +
                        algorithm_->name);
  }
  for (size_t k = 0; k < layout.rational_positions.size(); ++k) {
    const Position p = layout.rational_positions[k];
    rational_acc_[k] = CheckedAdd(
        rational_acc_[k], CheckedMul(w(p.row, p.col).re, d(p.row, p.col).re));
  }
  counter.general_muls += layout.rational_positions.size();
  counter.additions += layout.rational_positions.size();
  for (size_t k = 0; k < layout.pair_positions.size(); ++k) {
    const Position p = layout.pair_positions[k].first;
    pair_acc_[k] = KaratsubaAccumulate(pair_acc_[k], w(p.row, p.col),
                                       d(p.row, p.col), counter);
  }
  ++channels_seen_;
}

Grid<GaussInt> HadamardAccumulator::Finalize() const {
  if (channels_seen_ == 0) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "finalize on an empty Hadamard accumulator");
  }
  const ConjLayout& layout = algorithm_->layout;
  Grid<GaussInt> out(layout.side(), layout.side());
  for (size_t k = 0; k < layout.rational_positions.size(); ++k) {
    const Position p = layout.rational_positions[k];
    out(p.row, p.col) = GaussInt{rational_acc_[k]};
  }
  for (size_t k = 0; k < layout.pair_positions.size(); ++k) {
    const auto& [primary, mirror] = layout.pair_positions[k];
    const GaussInt value = Combine(pair_acc_[k]);
    out(primary.row, primary.col) = value;
    out(mirror.row, mirror.col) = Conj(value);
  }
  return out;
}

}  // namespace winoint
