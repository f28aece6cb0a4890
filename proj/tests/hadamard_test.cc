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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace winoint {
namespace {

struct Operands {
  Grid<GaussInt> w;
  Grid<GaussInt> d;
};

Operands RandomOperands(std::mt19937_64& rng, const WinoAlgorithm& a) {
  return {FilterTransform(oracle::RandomGrid(rng, 3, 3, -255, 255), a),
          ActivationTransform(oracle::RandomGrid(rng, a.t, a.t, -255, 255), a)};
}

TEST(HadamardTest, CountsPerChannel) {
  std::mt19937_64 rng(1);
  for (AlgorithmId id : AllAlgorithms()) {
    const WinoAlgorithm& a = Algorithm(id);
    HadamardAccumulator acc(a);
    MulCounter counter;
    for (int c = 1; c <= 4; ++c) {
      const Operands op = RandomOperands(rng, a);
      acc.Accumulate(op.w, op.d, counter);
      EXPECT_EQ(counter.general_muls, static_cast<uint64_t>(c * GeneralMulsPerTile(a)));
      EXPECT_EQ(acc.channels_seen(), c);
    }
  }
  EXPECT_EQ(GeneralMulsPerTile(Algorithm(AlgorithmId::kCplx4x4)), 16 + 3 * 10);
}

TEST(HadamardTest, ZeroFilterStillCounts) {
  const WinoAlgorithm& a = Algorithm(AlgorithmId::kCplx4x4);
  std::mt19937_64 rng(2);
  HadamardAccumulator acc(a);
  MulCounter counter;
  acc.Accumulate(Grid<GaussInt>(6, 6),
                 ActivationTransform(oracle::RandomGrid(rng, 6, 6, -255, 255), a), counter);
  EXPECT_EQ(counter.general_muls, 46u);
  const Grid<GaussInt> m = acc.Finalize();
  for (const GaussInt& v : m.data()) EXPECT_EQ(v, GaussInt(0));
}

TEST(HadamardTest, MatchesNaiveChannelSum) {
  std::mt19937_64 rng(3);
  for (AlgorithmId id : AllAlgorithms()) {
    const WinoAlgorithm& a = Algorithm(id);
    for (int channels : {1, 3, 8}) {
      HadamardAccumulator acc(a);
      MulCounter counter;
      Grid<GaussInt> naive(a.t, a.t);
      for (int c = 0; c < channels; ++c) {
        const Operands op = RandomOperands(rng, a);
        acc.Accumulate(op.w, op.d, counter);
        const Grid<GaussInt> h = oracle::Hadamard(op.w, op.d);
        for (int i = 0; i < a.t; ++i)
          for (int j = 0; j < a.t; ++j) naive(i, j) = naive(i, j) + h(i, j);
      }
      const Grid<GaussInt> m = acc.Finalize();
      EXPECT_EQ(m, naive) << AlgorithmName(id) << " C=" << channels;
      EXPECT_TRUE(SatisfiesLayout(m, a.layout));
    }
  }
}

TEST(HadamardTest, IdentityFilterPassesActivationThrough) {
  std::mt19937_64 rng(4);
  for (AlgorithmId id : AllAlgorithms()) {
    const WinoAlgorithm& a = Algorithm(id);
    const Grid<GaussInt> ones(a.t, a.t, GaussInt(1));
    const Grid<GaussInt> d =
        ActivationTransform(oracle::RandomGrid(rng, a.t, a.t, -255, 255), a);
    HadamardAccumulator acc(a);
    MulCounter counter;
    acc.Accumulate(ones, d, counter);
    EXPECT_EQ(acc.Finalize(), d);
  }
}

TEST(HadamardTest, OppositeFiltersCancel) {
  std::mt19937_64 rng(5);
  const WinoAlgorithm& a = Algorithm(AlgorithmId::kCplx4x4);
  const Grid<int64_t> g = oracle::RandomGrid(rng, 3, 3, -255, 255);
  Grid<int64_t> neg(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) neg(i, j) = -g(i, j);
  const Grid<GaussInt> d =
      ActivationTransform(oracle::RandomGrid(rng, 6, 6, -255, 255), a);
  HadamardAccumulator acc(a);
  MulCounter counter;
  acc.Accumulate(FilterTransform(g, a), d, counter);
  acc.Accumulate(FilterTransform(neg, a), d, counter);
  const Grid<GaussInt> m = acc.Finalize();
  for (const GaussInt& v : m.data()) EXPECT_EQ(v, GaussInt(0));
}

TEST(HadamardTest, DeferredCombineEqualsEagerCombine) {
  std::mt19937_64 rng(6);
  const WinoAlgorithm& a = Algorithm(AlgorithmId::kCplx4x4);
  HadamardAccumulator acc(a);
  MulCounter counter;
  std::vector<GaussInt> eager(a.layout.pair_positions.size());
  for (int c = 0; c < 5; ++c) {
    const Operands op = RandomOperands(rng, a);
    acc.Accumulate(op.w, op.d, counter);
    for (size_t k = 0; k < eager.size(); ++k) {
      const Position p = a.layout.pair_positions[k].first;
      eager[k] = eager[k] + Combine(KaratsubaAccumulate({}, op.w(p.row, p.col),
                                                        op.d(p.row, p.col), counter));
    }
  }
  ASSERT_EQ(acc.pair_acc().size(), eager.size());
  for (size_t k = 0; k < eager.size(); ++k) EXPECT_EQ(Combine(acc.pair_acc()[k]), eager[k]);
}

TEST(HadamardTest, Errors) {
  const WinoAlgorithm& a = Algorithm(AlgorithmId::kCplx4x4);
  HadamardAccumulator acc(a);
  EXPECT_THROW(acc.Finalize(), WinoError);
  Grid<GaussInt> bad(6, 6);
  bad(0, 3) = GaussInt(1, 1);  // mirror (0,4) left at zero
  MulCounter counter;
  try {
    acc.Accumulate(bad, Grid<GaussInt>(6, 6), counter);
    FAIL();
  } catch (const WinoError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLayoutViolation);
  }
  EXPECT_THROW(acc.Accumulate(Grid<GaussInt>(4, 4), Grid<GaussInt>(4, 4), counter), WinoError);
}

}  // namespace
}  // namespace winoint
