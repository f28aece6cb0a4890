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

#ifndef WINOINT_CONV_H_
#define WINOINT_CONV_H_

#include <cstdint>
#include <optional>
#include <random>

#include "winoint/gauss_int.h"
#include "winoint/ratio.h"
#include "winoint/tensor.h"
#include "winoint/winograd.h"

namespace winoint {

// 3×3 filter, stride 1, no dilation. An empty algorithm means the direct
// method. Channel counts of 0 are taken from the tensors.
struct ConvSpec {
  std::optional<AlgorithmId> algorithm;
  int padding = 0;
  bool scaling_enabled = false;
  int64_t in_channels = 0;
  int64_t out_channels = 0;
};

struct ConvStats {
  MulCounter muls;
  int64_t spatial_tiles = 0;   // tiles per channel plane, summed over the batch
  int64_t direct_muls = 0;     // what the direct method needs for this layer
  double reduction = 0.0;      // direct_muls / muls.general_muls
};

struct ConvResult {
  ITensor ofm;  // [n, out_h, out_w, out_channels], signed 32-bit accumulators
  ConvStats stats;
};

// ofm[b][y][x][o] = Σ_ch Σ_{u,v} (ifm[b][y+u−p][x+v−p][ch] − zp_a) ·
//                                (filters[o][u][v][ch] − zp_w)
// ifm is [n, h, w, c] and filters are [out_channels, 3, 3, c], both u8.
ConvResult DirectConv(const QTensor& ifm, const QTensor& filters,
                      const ConvSpec& spec);

// Tiled Winograd convolution. Filters are transformed once per
// (output channel, input channel); with scaling enabled the Winograd-domain
// filters are downscaled into int9 per position and the channel sums are
// reverse-scaled before the output transform.
ConvResult WinogradConv(const QTensor& ifm, const QTensor& filters,
                        const ConvSpec& spec);

// Dispatches on spec.algorithm.
ConvResult Convolve(const QTensor& ifm, const QTensor& filters,
                    const ConvSpec& spec);

// Relative figures are normalized by the peak magnitude of the reference
// OFM, so they stay meaningful where individual outputs cancel to ~0.
struct DiffReport {
  int64_t elements = 0;
  int64_t differing = 0;
  int64_t max_abs = 0;
  double mean_abs = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  int64_t reference_peak = 0;

  bool identical() const { return differing == 0; }
};

DiffReport Compare(const ConvResult& candidate, const ConvResult& reference);
DiffReport Compare(const ITensor& candidate, const ITensor& reference);

// Workers used for parallel loops: WINOINT_THREADS if set and positive,
// otherwise the hardware concurrency.
int WorkerCount();

struct LayerBounds {
  int64_t min_hw = 4;
  int64_t max_hw = 16;
  int64_t min_channels = 1;
  int64_t max_channels = 8;
  int64_t min_out_channels = 1;
  int64_t max_out_channels = 8;
  int max_padding = 1;
};

struct RandomLayer {
  QTensor ifm;
  QTensor filters;
  int padding = 0;
};

// Uniform u8 data, uniform zero points, batch 1.
RandomLayer MakeRandomLayer(std::mt19937_64& rng, const LayerBounds& bounds);
RandomLayer MakeRandomLayer(std::mt19937_64& rng, const Shape& ifm_shape,
                            int64_t out_channels, int padding);

}  // namespace winoint

#endif  // WINOINT_CONV_H_
