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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "winoint/conv.h"
#include "winoint/hadamard.h"
#include "winoint/ratio.h"
#include "winoint/scaling.h"
#include "winoint/winograd.h"

namespace winoint {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. Lossless equivalence on random layers.
Outcome OracleEquivalence() {
  const auto start = Clock::now();
  constexpr int kLayers = 1000;
  std::mt19937_64 rng(20260101);
  const LayerBounds bounds;  // 1×{4..16}×{4..16}×{1..8}, k ∈ {1..8}, p ∈ {0,1}
  int64_t mismatches = 0, checked = 0, direct_vs_oracle = 0;
  for (int i = 0; i < kLayers; ++i) {
    const RandomLayer l = MakeRandomLayer(rng, bounds);
    ConvSpec spec;
    spec.padding = l.padding;
    const ConvResult direct = DirectConv(l.ifm, l.filters, spec);
    const std::vector<int64_t> ref = oracle::PaddedConv(l.ifm, l.filters, l.padding);
    for (size_t e = 0; e < ref.size(); ++e) direct_vs_oracle += direct.ofm.data()[e] != ref[e];
    for (AlgorithmId id : AllAlgorithms()) {
      spec.algorithm = id;
      mismatches += Compare(WinogradConv(l.ifm, l.filters, spec), direct).differing;
      ++checked;
    }
  }
  const double secs = Seconds(start);
  std::ostringstream d;
  d << kLayers << " layers x 3 algorithms (" << checked << " runs), " << mismatches
    << " differing outputs vs direct, " << direct_vs_oracle
    << " direct vs padded oracle, " << Fmt(secs, 2) << " s";
  return {mismatches == 0 && direct_vs_oracle == 0 && secs < 60.0, d.str()};
}

// 2. General multiplications per tile and channel, and reduction ratios.
Outcome MultiplicationCounts() {
  const int expect_muls[] = {16, 36, 46};
  const char* expect_ratio[] = {"2.25", "4.00", "3.13"};
  bool ok = true;
  std::ostringstream d;
  int k = 0;
  for (AlgorithmId id : AllAlgorithms()) {
    const WinoAlgorithm& a = Algorithm(id);
    const int muls = GeneralMulsPerTile(a);
    const std::string ratio = FormatFixed(ReductionRatio(a), 2);
    // Cross-check against an actual accumulation of one channel.
    std::mt19937_64 rng(5);
    HadamardAccumulator acc(a);
    MulCounter counter;
    acc.Accumulate(FilterTransform(oracle::RandomGrid(rng, 3, 3, -255, 255), a),
                   ActivationTransform(oracle::RandomGrid(rng, a.t, a.t, -255, 255), a),
                   counter);
    ok &= muls == expect_muls[k] && counter.general_muls == static_cast<uint64_t>(muls) &&
          ratio == expect_ratio[k];
    d << a.name << " " << muls << " muls, ratio " << ratio << (k < 2 ? "; " : "");
    ++k;
  }
  return {ok, d.str()};
}

// 3. Bit-width-normalized efficiency gains.
Outcome EfficiencyGains() {
  const Ratio printed = Ratio(313, 100);  // 144/46 at the two decimals it is quoted with
  const Ratio exact = ReductionRatio(Algorithm(AlgorithmId::kCplx4x4));
  const Ratio r4 = ReductionRatio(Algorithm(AlgorithmId::kRat4x4));
  const Ratio r2 = ReductionRatio(Algorithm(AlgorithmId::kRat2x2));
  const double g4 = EfficiencyGain(printed, 12, r4, 18);
  const double g2 = EfficiencyGain(printed, 12, r2, 10);
  const double e4 = EfficiencyGain(exact, 12, r4, 18);
  const double e2 = EfficiencyGain(exact, 12, r2, 10);
  const bool ok = std::abs(g4 - 17.37) <= 0.01 && std::abs(g2 - 15.93) <= 0.01;
  std::ostringstream d;
  d << "vs rat4x4 " << Fmt(g4, 3) << "% (target 17.37), vs rat2x2 " << Fmt(g2, 3)
    << "% (target 15.93), ratio 3.13; with exact 144/46: " << Fmt(e4, 3) << "% and "
    << Fmt(e2, 3) << "%";
  return {ok, d.str()};
}

// 4. Worst-case range analysis.
Outcome RangeAnalysis() {
  const Grid<int64_t> mag = {{1020, 1530, 1530, 1020},
                             {1530, 2295, 2295, 1530},
                             {1530, 2295, 2295, 1530},
                             {1020, 1530, 1530, 1020}};
  const Grid<int> bits = {{11, 12, 12, 11}, {12, 13, 13, 12}, {12, 13, 13, 12}, {11, 12, 12, 11}};
  const RangeReport r2 = WorstCaseRanges(Algorithm(AlgorithmId::kRat2x2), kInt9Max);
  const int w4 = WorstCaseRanges(Algorithm(AlgorithmId::kRat4x4), kInt9Max).widening_bits;
  const int wc = WorstCaseRanges(Algorithm(AlgorithmId::kCplx4x4), kInt9Max).widening_bits;
  const int act = WorstCaseActivationRanges(Algorithm(AlgorithmId::kRat2x2), kInt9Max).max_bits;
  const bool ok = r2.magnitude == mag && r2.bits == bits && w4 == 10 && wc == 4;
  std::ostringstream d;
  d << "rat2x2 magnitude/bit matrices " << (r2.magnitude == mag && r2.bits == bits ? "match" : "differ")
    << " (max " << r2.max_magnitude << ", " << r2.max_bits << " bits), widening rat4x4 " << w4
    << ", cplx4x4 " << wc << ", activations " << act << " bits";
  return {ok, d.str()};
}

// 5. Downscaling factor table.
Outcome ScaleTableValues() {
  static const char* const kTable[15][4] = {
      {"0.06250", "0.03125", "0.01563", "0.00781"}, {"0.12500", "0.06250", "0.03125", "0.01563"},
      {"0.18750", "0.09375", "0.04688", "0.02344"}, {"0.25000", "0.12500", "0.06250", "0.03125"},
      {"0.31250", "0.15625", "0.07813", "0.03906"}, {"0.37500", "0.18750", "0.09375", "0.04688"},
      {"0.43750", "0.21875", "0.10938", "0.05469"}, {"0.50000", "0.25000", "0.12500", "0.06250"},
      {"0.56250", "0.28125", "0.14063", "0.07031"}, {"0.62500", "0.31250", "0.15625", "0.07813"},
      {"0.68750", "0.34375", "0.17188", "0.08594"}, {"0.75000", "0.37500", "0.18750", "0.09375"},
      {"0.81250", "0.40625", "0.20313", "0.10156"}, {"0.87500", "0.43750", "0.21875", "0.10938"},
      {"0.93750", "0.46875", "0.23438", "0.11719"}};
  // Gray cells of the printed table, by n: number of leading columns left white.
  static const int kWhite[15] = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 4, 4};
  const std::vector<ScaleTableEntry> t = ScaleTable();
  int value_mismatch = 0, gray_mismatch = 0, dup_mismatch = 0, gray = 0, dups = 0;
  if (t.size() != 60) return {false, "expected 60 entries, got " + std::to_string(t.size())};
  for (const ScaleTableEntry& e : t) {
    value_mismatch += e.text != kTable[e.n - 1][e.p];
    gray_mismatch += e.out_of_range != (e.p >= kWhite[e.n - 1]);
    bool twin = false;
    for (const ScaleTableEntry& o : t) twin |= o.p < e.p && o.value == e.value;
    dup_mismatch += e.duplicate != twin;
    gray += e.out_of_range;
    dups += e.duplicate;
  }
  std::ostringstream d;
  d << "60 entries, " << value_mismatch << " value mismatches, " << gray << " out-of-range ("
    << gray_mismatch << " differ from the grayed cells), " << dups << " duplicates ("
    << dup_mismatch << " wrong)";
  return {value_mismatch == 0 && gray_mismatch == 0 && dup_mismatch == 0, d.str()};
}

// 6. Scale factors over the F(2×2,3×3) magnitude range, and bit-width reduction.
Outcome ScaleFactorPipeline() {
  int bad = 0, not_optimal = 0;
  for (int64_t mag = 256; mag <= 2295; ++mag) {
    const ScaleFactor f = ComputeScaleFactor(mag);
    const Ratio v = f.value();
    bad += f.n < 1 || f.n > 15 || f.shift < 4 || f.shift > 7 || v.num * mag > 255 * v.den;
    not_optimal += (int64_t{f.n} << (7 - f.shift)) != oracle::BestFactorOver128(mag);
  }
  const int from = WorstCaseRanges(Algorithm(AlgorithmId::kRat2x2), kInt9Max).max_bits;
  const int to = SignedBitWidth(kInt9Max);
  const double reduction = BitwidthReductionPercent(from, to);
  const std::string text = Fmt(reduction, 2);
  std::ostringstream d;
  d << "2040 magnitudes, " << bad << " out of bounds, " << not_optimal
    << " below the best n/2^shift; " << from << " -> " << to << " bits = " << text << "%";
  return {bad == 0 && text == "30.77", d.str()};
}

// 7. Static down/up error sweep.
Outcome StaticError() {
  const auto start = Clock::now();
  const ErrorReport r = StaticErrorSweep(256, 2295);
  const double secs = Seconds(start);
  const double prop_pct = r.mean_proportional * 100.0;
  std::ostringstream d;
  d << "mean proportional " << Fmt(prop_pct, 4) << "% (bound 0.5%, reference 0.1%), mean numerical "
    << Fmt(r.mean_numerical, 4) << " (bound 2.5, reference 1.12), population 256..2295 uniform"
    << " (the reference population is unspecified), " << Fmt(secs, 3) << " s";
  return {r.mean_proportional <= 0.005 && r.mean_numerical <= 2.5 && secs < 5.0, d.str()};
}

// 8. Lossy end-to-end deviation with scaling on.
Outcome LossyEndToEnd() {
  const auto start = Clock::now();
  constexpr int kLayers = 100;
  std::mt19937_64 rng(20260808);
  const LayerBounds bounds;
  double mean_sum = 0.0, worst = 0.0;
  for (int i = 0; i < kLayers; ++i) {
    const RandomLayer l = MakeRandomLayer(rng, bounds);
    ConvSpec spec;
    spec.padding = l.padding;
    const ConvResult direct = DirectConv(l.ifm, l.filters, spec);
    spec.algorithm = AlgorithmId::kRat2x2;
    spec.scaling_enabled = true;
    const DiffReport d = Compare(WinogradConv(l.ifm, l.filters, spec), direct);
    mean_sum += d.mean_rel;
    worst = std::max(worst, d.max_rel);
  }
  const double mean = mean_sum / kLayers;
  const double secs = Seconds(start);
  std::ostringstream d;
  d << kLayers << " rat2x2 layers, mean relative deviation " << Fmt(mean * 100, 3)
    << "% (bound 1%), max " << Fmt(worst * 100, 3) << "% (bound 5%), peak-normalized, "
    << Fmt(secs, 2) << " s";
  return {mean <= 0.01 && worst <= 0.05 && secs < 60.0, d.str()};
}

}  // namespace
}  // namespace winoint

int main() {
  using winoint::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", winoint::OracleEquivalence},
      {"multiplication counts", winoint::MultiplicationCounts},
      {"efficiency gains", winoint::EfficiencyGains},
      {"range analysis", winoint::RangeAnalysis},
      {"scale table", winoint::ScaleTableValues},
      {"scale factor pipeline", winoint::ScaleFactorPipeline},
      {"static error sweep", winoint::StaticError},
      {"lossy end-to-end", winoint::LossyEndToEnd},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
