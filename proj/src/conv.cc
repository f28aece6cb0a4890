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

#include "winoint/conv.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "winoint/hadamard.h"
#include "winoint/scaling.h"

namespace winoint {
namespace {

struct LayerGeometry {
  int64_t n, h, w, c, k, out_h, out_w;
};

LayerGeometry Validate(const QTensor& ifm, const QTensor& filters,
                       const ConvSpec& spec) {
  if (ifm.dtype() != DType::kU8 || filters.dtype() != DType::kU8) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "convolution operands must be u8 tensors");
  }
  if (spec.padding < 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "negative padding");
  }
  const Shape& s = ifm.shape();
  const Shape& f = filters.shape();
  if (f.h != 3 || f.w != 3) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    "filters must be [k,3,3,c], got " + ToString(f));
  }
  if (f.c != s.c) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    "filter channels " + std::to_string(f.c) +
                        " != input channels " + std::to_string(s.c));
  }
  if (spec.in_channels != 0 && spec.in_channels != s.c) {
    throw WinoError(ErrorCode::kShapeMismatch, "in_channels disagrees with the input");
  }
  if (spec.out_channels != 0 && spec.out_channels != f.n) {
    throw WinoError(ErrorCode::kShapeMismatch, "out_channels disagrees with the filters");
  }
  LayerGeometry g{s.n, s.h, s.w, s.c, f.n, ConvOutputExtent(s.h, spec.padding),
                  ConvOutputExtent(s.w, spec.padding)};
  if (g.out_h < 1 || g.out_w < 1) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    "input " + ToString(s) + " is smaller than the filter");
  }
  return g;
}

Grid<int64_t> FilterSlice(const ITensor& filters, int64_t o, int64_t ch) {
  Grid<int64_t> g(3, 3);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) g(u, v) = filters.at(o, u, v, ch);
  return g;
}

// Runs body(i) for i in [0, count) on up to WorkerCount() threads and
// rethrows the first failure.
template <typename Body>
void ParallelFor(int64_t count, Body body) {
  const int workers =
      static_cast<int>(std::min<int64_t>(WorkerCount(), std::max<int64_t>(count, 1)));
  if (workers <= 1) {
    for (int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&] {
      for (int64_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double Reduction(int64_t direct, uint64_t general) {
  return general == 0 ? 0.0 : static_cast<double>(direct) / static_cast<double>(general);
}

}  // namespace

int WorkerCount() {
  if (const char* env = std::getenv("WINOINT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ConvResult DirectConv(const QTensor& ifm, const QTensor& filters,
                      const ConvSpec& spec) {
  if (spec.algorithm.has_value()) {
    throw WinoError(ErrorCode::kInvalidArgument, "direct convolution takes no algorithm");
  }
  const LayerGeometry g = Validate(ifm, filters, spec);
  const ITensor x = ZeroPointAdjust(ifm);
  const ITensor wt = ZeroPointAdjust(filters);
  const int64_t p = spec.padding;

  std::vector<int32_t> out(static_cast<size_t>(g.n * g.out_h * g.out_w * g.k));
  MulCounter counter;
  size_t idx = 0;
  for (int64_t b = 0; b < g.n; ++b) {
    for (int64_t y = 0; y < g.out_h; ++y) {
      for (int64_t xo = 0; xo < g.out_w; ++xo) {
        for (int64_t o = 0; o < g.k; ++o) {
          int64_t acc = 0;
          for (int u = 0; u < 3; ++u) {
            const int64_t iy = y + u - p;
            for (int v = 0; v < 3; ++v) {
              const int64_t ix = xo + v - p;
              const bool inside = iy >= 0 && iy < g.h && ix >= 0 && ix < g.w;
              for (int64_t ch = 0; ch < g.c; ++ch) {
                // Padding contributes zero products; they still count.
                if (inside) acc += int64_t{x.at(b, iy, ix, ch)} * wt.at(o, u, v, ch);
              }
            }
          }
          counter.general_muls += static_cast<uint64_t>(9 * g.c);
          out[idx++] = CheckedNarrow32(acc);
        }
      }
    }
  }
  ConvResult result{ITensor({g.n, g.out_h, g.out_w, g.k}, 32, std::move(out)), {}};
  result.stats.muls = counter;
  result.stats.direct_muls = static_cast<int64_t>(counter.general_muls);
  result.stats.reduction = 1.0;
  return result;
}

ConvResult WinogradConv(const QTensor& ifm, const QTensor& filters,
                        const ConvSpec& spec) {
  if (!spec.algorithm.has_value()) {
    throw WinoError(ErrorCode::kInvalidArgument, "Winograd convolution needs an algorithm");
  }
  const WinoAlgorithm& alg = Algorithm(*spec.algorithm);
  if (spec.scaling_enabled && alg.id == AlgorithmId::kRat4x4) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "precision scaling is supported for rat2x2 and cplx4x4 only");
  }
  const LayerGeometry g = Validate(ifm, filters, spec);
  const ITensor x = ZeroPointAdjust(ifm);
  const ITensor wt = ZeroPointAdjust(filters);

  const std::vector<Tile> tiles = ExtractTiles(x, alg, spec.padding);
  std::vector<Grid<GaussInt>> transformed(tiles.size());
  ParallelFor(static_cast<int64_t>(tiles.size()), [&](int64_t i) {
    transformed[i] = ActivationTransform(tiles[i].data, alg);
  });
  const int64_t spatial_tiles = static_cast<int64_t>(tiles.size()) / g.c;
  const Rounding rounding =
      spec.scaling_enabled ? Rounding::kHalfAwayFromZero : Rounding::kExact;

  std::vector<int32_t> out(static_cast<size_t>(g.n * g.out_h * g.out_w * g.k), 0);
  std::vector<MulCounter> counters(static_cast<size_t>(g.k));
  ParallelFor(g.k, [&](int64_t o) {
    std::vector<Grid<GaussInt>> w;
    w.reserve(static_cast<size_t>(g.c));
    for (int64_t ch = 0; ch < g.c; ++ch) w.push_back(FilterTransform(FilterSlice(wt, o, ch), alg));
    Grid<ScaleFactor> factors;
    if (spec.scaling_enabled) {
      factors = ScaleFactorsForFilter(w);
      w = ApplyScaling(w, factors);
    }
    MulCounter& counter = counters[o];
    for (int64_t st = 0; st < spatial_tiles; ++st) {
      HadamardAccumulator acc(alg);
      const size_t base = static_cast<size_t>(st * g.c);
      for (int64_t ch = 0; ch < g.c; ++ch) acc.Accumulate(w[ch], transformed[base + ch], counter);
      Grid<GaussInt> m = acc.Finalize();
      if (spec.scaling_enabled) ApplyReverseGrid(m, factors);
      const Grid<int32_t> y = OutputTransform(m, alg, rounding);
      const Tile& origin = tiles[base];
      const int64_t oy = origin.row + spec.padding;
      const int64_t ox = origin.col + spec.padding;
      for (int a = 0; a < alg.m; ++a) {
        if (oy + a >= g.out_h) break;
        for (int bcol = 0; bcol < alg.m; ++bcol) {
          if (ox + bcol >= g.out_w) break;
          out[((origin.batch * g.out_h + oy + a) * g.out_w + ox + bcol) * g.k + o] = y(a, bcol);
        }
      }
    }
  });

  ConvResult result{ITensor({g.n, g.out_h, g.out_w, g.k}, 32, std::move(out)), {}};
  for (const MulCounter& c : counters) result.stats.muls += c;
  result.stats.spatial_tiles = spatial_tiles;
  result.stats.direct_muls = g.n * g.out_h * g.out_w * g.k * 9 * g.c;
  result.stats.reduction = Reduction(result.stats.direct_muls, result.stats.muls.general_muls);
  return result;
}

ConvResult Convolve(const QTensor& ifm, const QTensor& filters,
                    const ConvSpec& spec) {
  return spec.algorithm.has_value() ? WinogradConv(ifm, filters, spec)
                                    : DirectConv(ifm, filters, spec);
}

DiffReport Compare(const ITensor& candidate, const ITensor& reference) {
  if (!(candidate.shape() == reference.shape())) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    ToString(candidate.shape()) + " vs " + ToString(reference.shape()));
  }
  DiffReport r;
  r.elements = static_cast<int64_t>(reference.data().size());
  for (int32_t v : reference.data()) {
    r.reference_peak = std::max<int64_t>(r.reference_peak, std::llabs(v));
  }
  const double peak = r.reference_peak == 0 ? 1.0 : static_cast<double>(r.reference_peak);
  double abs_sum = 0.0;
  for (size_t i = 0; i < reference.data().size(); ++i) {
    const int64_t d = std::llabs(int64_t{candidate.data()[i]} - reference.data()[i]);
    if (d != 0) ++r.differing;
    r.max_abs = std::max(r.max_abs, d);
    abs_sum += static_cast<double>(d);
  }
  if (r.elements > 0) r.mean_abs = abs_sum / static_cast<double>(r.elements);
  r.max_rel = static_cast<double>(r.max_abs) / peak;
  r.mean_rel = r.mean_abs / peak;
  return r;
}

DiffReport Compare(const ConvResult& candidate, const ConvResult& reference) {
  return Compare(candidate.ofm, reference.ofm);
}

RandomLayer MakeRandomLayer(std::mt19937_64& rng, const Shape& ifm_shape,
                            int64_t out_channels, int padding) {
  std::uniform_int_distribution<int32_t> byte(0, 255);
  auto fill = [&](int64_t count) {
    std::vector<int32_t> v(static_cast<size_t>(count));
    for (auto& e : v) e = byte(rng);
    return v;
  };
  const int zp_a = byte(rng);
  const int zp_w = byte(rng);
  QTensor ifm(ifm_shape, DType::kU8, zp_a, 1.0, fill(ifm_shape.elements()));
  const Shape fshape{out_channels, 3, 3, ifm_shape.c};
  QTensor filters(fshape, DType::kU8, zp_w, 1.0, fill(fshape.elements()));
  return {std::move(ifm), std::move(filters), padding};
}

RandomLayer MakeRandomLayer(std::mt19937_64& rng, const LayerBounds& bounds) {
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  const int64_t h = pick(bounds.min_hw, bounds.max_hw);
  const int64_t w = pick(bounds.min_hw, bounds.max_hw);
  const int64_t c = pick(bounds.min_channels, bounds.max_channels);
  const int64_t k = pick(bounds.min_out_channels, bounds.max_out_channels);
  const int padding = static_cast<int>(pick(0, bounds.max_padding));
  // Inputs need at least one output position.
  const int64_t need = 3 - 2 * padding;
  return MakeRandomLayer(rng, {1, std::max(h, need), std::max(w, need), c}, k, padding);
}

}  // namespace winoint
