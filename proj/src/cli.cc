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

#include "winoint/cli.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "winoint/conv.h"
#include "winoint/scaling.h"
#include "winoint/winograd.h"

namespace winoint {
namespace {

// Lossy-path bounds for verify --scaling on (peak-normalized deviation).
constexpr double kLossyMeanRelBound = 0.01;
constexpr double kLossyMaxRelBound = 0.05;

struct Options {
  std::string algorithm = "all";
  std::string scaling = "off";
  int trials = 100;
  uint64_t seed = 1;
  std::string shape;
  int64_t out_channels = 0;
  int padding = -1;
  std::string in_path;
  std::string filters_path;
  std::string out_path;
  std::string population = "256,2295";
};

std::string Fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

std::vector<int64_t> ParseInts(const std::string& text, size_t expected,
                               const char* what) {
  std::vector<int64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw WinoError(ErrorCode::kInvalidArgument,
                      std::string("bad ") + what + " '" + text + "'");
    }
  }
  if (values.size() != expected) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    std::string(what) + " needs " + std::to_string(expected) +
                        " comma-separated integers");
  }
  return values;
}

Shape ParseShape(const std::string& text) {
  const auto v = ParseInts(text, 4, "shape");
  for (int64_t d : v) {
    if (d <= 0) throw WinoError(ErrorCode::kInvalidArgument, "shape dims must be positive");
  }
  return {v[0], v[1], v[2], v[3]};
}

// Algorithms selected by --algorithm; "all" expands to every Winograd variant.
std::vector<AlgorithmId> SelectAlgorithms(const std::string& name) {
  if (name == "all") return AllAlgorithms();
  return {ParseAlgorithmId(name)};
}

std::optional<AlgorithmId> SelectMethod(const std::string& name) {
  if (name == "direct") return std::nullopt;
  return ParseAlgorithmId(name);
}

template <typename T>
void PrintGrid(std::ostream& out, const Grid<T>& g) {
  for (int r = 0; r < g.rows(); ++r) {
    out << "  ";
    for (int c = 0; c < g.cols(); ++c) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%6lld", static_cast<long long>(g(r, c)));
      out << buf;
    }
    out << "\n";
  }
}

int RunVerify(const Options& o, std::ostream& out) {
  const bool lossy = o.scaling == "on";
  bool ok = true;
  for (AlgorithmId id : SelectAlgorithms(o.algorithm)) {
    if (lossy && id == AlgorithmId::kRat4x4) {
      if (o.algorithm == "all") continue;
      throw WinoError(ErrorCode::kInvalidArgument, "rat4x4 has no scaling path");
    }
    std::mt19937_64 rng(o.seed);
    int passed = 0;
    double worst_mean = 0.0;
    double worst_max = 0.0;
    for (int trial = 0; trial < o.trials; ++trial) {
      RandomLayer layer =
          o.shape.empty()
              ? MakeRandomLayer(rng, LayerBounds{})
              : MakeRandomLayer(rng, ParseShape(o.shape),
                                o.out_channels > 0 ? o.out_channels : 1,
                                o.padding < 0 ? 0 : o.padding);
      if (!o.shape.empty() && o.padding < 0) layer.padding = 0;
      ConvSpec direct{std::nullopt, layer.padding};
      ConvSpec wino{id, layer.padding, lossy};
      const DiffReport d = Compare(WinogradConv(layer.ifm, layer.filters, wino),
                                   DirectConv(layer.ifm, layer.filters, direct));
      worst_mean = std::max(worst_mean, d.mean_rel);
      worst_max = std::max(worst_max, d.max_rel);
      const bool pass = lossy ? (d.mean_rel <= kLossyMeanRelBound &&
                                 d.max_rel <= kLossyMaxRelBound)
                              : d.identical();
      if (pass) {
        ++passed;
      } else {
        out << AlgorithmName(id) << ": trial " << trial << " failed (seed " << o.seed
            << ", differing " << d.differing << ", max abs " << d.max_abs << ")\n";
      }
    }
    out << AlgorithmName(id) << ": " << passed << "/" << o.trials
        << (lossy ? " within bounds" : " exact");
    if (lossy) {
      out << " (worst mean rel " << Fixed(worst_mean * 100, 4) << "%, worst max rel "
          << Fixed(worst_max * 100, 4) << "%)";
    }
    out << "\n";
    ok = ok && passed == o.trials;
  }
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int RunCount(const Options& o, std::ostream& out) {
  const auto ids = SelectAlgorithms(o.algorithm);
  out << "algorithm,tile,general_muls_per_tile,direct_muls_per_tile,reduction\n";
  for (AlgorithmId id : ids) {
    const WinoAlgorithm& a = Algorithm(id);
    out << AlgorithmName(id) << "," << a.t << "x" << a.t << ","
        << GeneralMulsPerTile(a) << "," << a.m * a.m * a.r * a.r << ","
        << FormatFixed(ReductionRatio(a), 2) << "\n";
  }

  const Shape shape = ParseShape(o.shape.empty() ? "1,8,8,16" : o.shape);
  const int64_t k = o.out_channels > 0 ? o.out_channels : 8;
  const int padding = o.padding < 0 ? 1 : o.padding;
  std::mt19937_64 rng(o.seed);
  const RandomLayer layer = MakeRandomLayer(rng, shape, k, padding);
  out << "\nlayer " << ToString(shape) << ", " << k << " output channels, padding "
      << padding << "\n";
  out << "method,spatial_tiles,general_muls,reduction\n";
  const ConvResult direct = DirectConv(layer.ifm, layer.filters, {std::nullopt, padding});
  out << "direct,0," << direct.stats.muls.general_muls << ",1.00\n";
  for (AlgorithmId id : ids) {
    const ConvResult r = WinogradConv(layer.ifm, layer.filters, {id, padding});
    out << AlgorithmName(id) << "," << r.stats.spatial_tiles << ","
        << r.stats.muls.general_muls << ","
        << FormatFixed(Ratio(direct.stats.direct_muls,
                             static_cast<int64_t>(r.stats.muls.general_muls)),
                       2)
        << "\n";
  }

  if (ids.size() == AllAlgorithms().size()) {
    // Bit widths of Winograd-domain filters for 8-bit spatial weights.
    const Ratio cplx(313, 100);
    out << "\nefficiency gain (8-bit spatial filters, ratio as printed)\n";
    out << "cplx4x4 vs rat4x4 (12 vs 18 bits): "
        << Fixed(EfficiencyGain(cplx, 12, ReductionRatio(Algorithm(AlgorithmId::kRat4x4)), 18), 3)
        << "%\n";
    out << "cplx4x4 vs rat2x2 (12 vs 10 bits): "
        << Fixed(EfficiencyGain(cplx, 12, ReductionRatio(Algorithm(AlgorithmId::kRat2x2)), 10), 3)
        << "%\n";
    const Ratio exact = ReductionRatio(Algorithm(AlgorithmId::kCplx4x4));
    out << "with the exact ratio 144/46: "
        << Fixed(EfficiencyGain(exact, 12, ReductionRatio(Algorithm(AlgorithmId::kRat4x4)), 18), 3)
        << "% and "
        << Fixed(EfficiencyGain(exact, 12, ReductionRatio(Algorithm(AlgorithmId::kRat2x2)), 10), 3)
        << "%\n";
  }
  return 0;
}

int RunRanges(const Options& o, std::ostream& out) {
  for (AlgorithmId id : SelectAlgorithms(o.algorithm)) {
    const WinoAlgorithm& a = Algorithm(id);
    const RangeReport w = WorstCaseRanges(a, kInt9Max);
    out << AlgorithmName(id) << " (" << a.name << "), int9 weights in [-255, 255]\n";
    if (w.complex_components) {
      out << "complex entries: re and im bounded separately, larger shown\n";
    }
    out << "filter magnitude:\n";
    PrintGrid(out, w.magnitude);
    out << "filter bits:\n";
    PrintGrid(out, w.bits);
    out << "max magnitude: " << w.max_magnitude << "\n";
    out << "max bits: " << w.max_bits << "\n";
    out << "widening bits: " << w.widening_bits << " (ceil(log2(" << a.filter_scale
        << "^2)))\n";
    const RangeReport d = WorstCaseActivationRanges(a, kInt9Max);
    out << "activation max magnitude: " << d.max_magnitude << ", max bits: " << d.max_bits
        << "\n\n";
  }
  return 0;
}

int RunScaleTable(const Options& o, std::ostream& out) {
  std::ostringstream csv;
  csv << "n,p,value,out_of_range,duplicate\n";
  for (const ScaleTableEntry& e : ScaleTable()) {
    csv << e.n << "," << e.p << "," << e.text << "," << (e.out_of_range ? 1 : 0) << ","
        << (e.duplicate ? 1 : 0) << "\n";
  }
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw WinoError(ErrorCode::kIo, "cannot open " + o.out_path);
    f << csv.str();
  }
  out << csv.str();
  return 0;
}

int RunStaticError(const Options& o, std::ostream& out) {
  const auto range = ParseInts(o.population, 2, "population");
  const ErrorReport report = StaticErrorSweep(range[0], range[1]);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw WinoError(ErrorCode::kIo, "cannot open " + o.out_path);
    WriteErrorCsv(report, f);
  } else {
    WriteErrorCsv(report, out);
  }
  out << "weights: " << report.records.size() << " in [" << range[0] << ", " << range[1]
      << "]\n";
  out << "mean numerical error: " << Fixed(report.mean_numerical, 4)
      << " (reference figure 1.12 over an unspecified weight population)\n";
  out << "mean proportional error: " << Fixed(report.mean_proportional * 100, 4)
      << "% (reference figure 0.1%)\n";
  const int widened = WorstCaseRanges(Algorithm(AlgorithmId::kRat2x2), kInt9Max).max_bits;
  out << "filter bit width " << widened << " -> 9: "
      << Fixed(BitwidthReductionPercent(widened, 9), 2) << "% reduction\n";
  return 0;
}

int RunConv(const Options& o, std::ostream& out) {
  if (o.in_path.empty() || o.filters_path.empty() || o.out_path.empty()) {
    throw WinoError(ErrorCode::kInvalidArgument, "conv needs --in, --filters and --out");
  }
  const QTensor ifm = LoadQtf(o.in_path);
  const QTensor filters = LoadQtf(o.filters_path);
  ConvSpec spec;
  spec.algorithm = SelectMethod(o.algorithm == "all" ? "cplx4x4" : o.algorithm);
  spec.padding = o.padding < 0 ? 0 : o.padding;
  spec.scaling_enabled = o.scaling == "on";
  if (spec.scaling_enabled && !spec.algorithm) {
    throw WinoError(ErrorCode::kInvalidArgument, "the direct method has no scaling");
  }
  const ConvResult r = Convolve(ifm, filters, spec);
  SaveQtf(r.ofm.ToQTensor(), o.out_path);
  out << "ofm " << ToString(r.ofm.shape()) << " -> " << o.out_path << "\n";
  out << "general multiplications: " << r.stats.muls.general_muls << "\n";
  out << "direct-method multiplications: " << r.stats.direct_muls << "\n";
  out << "reduction: " << Fixed(r.stats.reduction, 2) << "\n";
  return 0;
}

int RunBench(const Options& o, std::ostream& out) {
  const Shape shape = ParseShape(o.shape.empty() ? "1,32,32,16" : o.shape);
  const int64_t k = o.out_channels > 0 ? o.out_channels : 16;
  const int padding = o.padding < 0 ? 1 : o.padding;
  const int reps = std::max(1, o.trials == 100 ? 3 : o.trials);
  std::mt19937_64 rng(o.seed);
  const RandomLayer layer = MakeRandomLayer(rng, shape, k, padding);
  out << "layer " << ToString(shape) << ", " << k << " output channels, padding " << padding
      << ", " << reps << " repetitions, " << WorkerCount() << " workers\n";
  out << "method,seconds_per_layer,outputs_per_second,general_muls\n";

  std::vector<std::optional<AlgorithmId>> methods = {std::nullopt};
  for (AlgorithmId id : SelectAlgorithms(o.algorithm)) methods.push_back(id);
  for (const auto& method : methods) {
    ConvSpec spec{method, padding, o.scaling == "on" && method.has_value() &&
                                       *method != AlgorithmId::kRat4x4};
    ConvResult r;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) r = Convolve(layer.ifm, layer.filters, spec);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
    const double outputs = static_cast<double>(r.ofm.data().size());
    out << (method ? std::string(AlgorithmName(*method)) : std::string("direct")) << ","
        << Fixed(secs, 6) << "," << Fixed(outputs / secs, 0) << ","
        << r.stats.muls.general_muls << "\n";
  }
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Integer Winograd convolution toolkit", "winoint"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> algorithms = {"rat2x2", "rat4x4", "cplx4x4", "direct", "all"};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--algorithm", o.algorithm, "rat2x2|rat4x4|cplx4x4|direct|all")
        ->check(CLI::IsMember(algorithms));
    sub->add_option("--seed", o.seed, "seed for generated tensors");
  };
  auto add_layer = [&](CLI::App* sub) {
    sub->add_option("--shape", o.shape, "input shape n,h,w,c");
    sub->add_option("--out-channels", o.out_channels, "output channels")
        ->check(CLI::PositiveNumber);
    sub->add_option("--padding", o.padding, "zero padding")->check(CLI::NonNegativeNumber);
    sub->add_option("--scaling", o.scaling, "filter precision scaling on|off")
        ->check(CLI::IsMember({"on", "off"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "randomized equivalence against the direct method");
  add_common(verify);
  add_layer(verify);
  verify->add_option("--trials", o.trials, "random layers per algorithm")->check(CLI::PositiveNumber);

  CLI::App* count = app.add_subcommand("count", "general multiplication counts and reductions");
  add_common(count);
  add_layer(count);

  CLI::App* ranges = app.add_subcommand("ranges", "worst-case Winograd-domain ranges");
  add_common(ranges);

  CLI::App* table = app.add_subcommand("scale-table", "n/2^p downscaling factors");
  table->add_option("--out", o.out_path, "also write the CSV here");

  CLI::App* sweep = app.add_subcommand("static-error", "down/up scaling error sweep");
  sweep->add_option("--out", o.out_path, "CSV output path (default stdout)");
  sweep->add_option("--population", o.population, "weight range lo,hi");

  CLI::App* conv = app.add_subcommand("conv", "convolve QTF tensors");
  add_common(conv);
  add_layer(conv);
  conv->add_option("--in", o.in_path, "input feature map (QTF)");
  conv->add_option("--filters", o.filters_path, "filters [k,3,3,c] (QTF)");
  conv->add_option("--out", o.out_path, "output feature map (QTF, i32)");

  CLI::App* bench = app.add_subcommand("bench", "time direct vs Winograd layers");
  add_common(bench);
  add_layer(bench);
  bench->add_option("--trials", o.trials, "repetitions per method")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (verify->parsed()) return RunVerify(o, out);
    if (count->parsed()) return RunCount(o, out);
    if (ranges->parsed()) return RunRanges(o, out);
    if (table->parsed()) return RunScaleTable(o, out);
    if (sweep->parsed()) return RunStaticError(o, out);
    if (conv->parsed()) return RunConv(o, out);
    if (bench->parsed()) return RunBench(o, out);
  } catch (const WinoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace winoint
