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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.h"
#include "winoint/conv.h"
#include "winoint/tensor.h"

namespace winoint {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "winoint");
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool Contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("winoint_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(CliTest, CountComplex) {
  const CliRun r = Cli({"count", "--algorithm", "cplx4x4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Contains(r.out, "cplx4x4,6x6,46,144,3.13"));
  EXPECT_TRUE(Contains(r.out, "cplx4x4,4,23552,3.13"));
  EXPECT_TRUE(Contains(r.out, "direct,0,73728,1.00"));
}

TEST(CliTest, CountAllPrintsGains) {
  const CliRun r = Cli({"count"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Contains(r.out, "rat2x2,4x4,16,36,2.25"));
  EXPECT_TRUE(Contains(r.out, "rat4x4,6x6,36,144,4.00"));
  EXPECT_TRUE(Contains(r.out, "17.375"));
  EXPECT_TRUE(Contains(r.out, "15.926"));
}

TEST(CliTest, RangesRat2x2) {
  const CliRun r = Cli({"ranges", "--algorithm", "rat2x2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Contains(r.out, "    1020  1530  1530  1020\n    1530  2295  2295  1530\n"));
  EXPECT_TRUE(Contains(r.out, "max magnitude: 2295"));
  EXPECT_TRUE(Contains(r.out, "max bits: 13"));
  EXPECT_TRUE(Contains(r.out, "widening bits: 2"));
}

TEST(CliTest, VerifyComplexSeed7) {
  const CliRun r = Cli({"verify", "--algorithm", "cplx4x4", "--trials", "100", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Contains(r.out, "cplx4x4: 100/100 exact"));
  EXPECT_TRUE(Contains(r.out, "PASS"));
  EXPECT_FALSE(Contains(r.out, "FAIL"));
}

TEST(CliTest, VerifyAllWithScaling) {
  const CliRun r = Cli({"verify", "--algorithm", "rat2x2", "--scaling", "on", "--trials", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(Contains(r.out, "within bounds"));
}

TEST(CliTest, SameArgumentsSameOutput) {
  const std::vector<std::string> args = {"verify", "--trials", "5", "--seed", "42"};
  EXPECT_EQ(Cli(args).out, Cli(args).out);
  const std::vector<std::string> table = {"scale-table"};
  EXPECT_EQ(Cli(table).out, Cli(table).out);
}

TEST(CliTest, RejectsBadInvocations) {
  EXPECT_NE(Cli({}).code, 0);
  EXPECT_NE(Cli({"frobnicate"}).code, 0);
  EXPECT_NE(Cli({"count", "--bogus"}).code, 0);
  EXPECT_NE(Cli({"count", "--algorithm", "rat6x6"}).code, 0);
  EXPECT_NE(Cli({"verify", "--trials", "0"}).code, 0);
  EXPECT_NE(Cli({"bench", "--shape", "1,2"}).code, 0);
  EXPECT_NE(Cli({"static-error", "--population", "10,20"}).code, 0);
}

TEST(CliTest, ScaleTable) {
  const CliRun r = Cli({"scale-table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Contains(r.out, "n,p,value,out_of_range,duplicate\n"));
  EXPECT_TRUE(Contains(r.out, "\n2,0,0.12500,0,0\n"));
  EXPECT_TRUE(Contains(r.out, "\n4,1,0.12500,0,1\n"));
  EXPECT_TRUE(Contains(r.out, "\n15,3,0.11719,0,0\n"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 61);
}

TEST_F(CliFiles, StaticErrorWritesCsv) {
  const std::string csv = Path("err.csv");
  const CliRun r = Cli({"static-error", "--out", csv});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Contains(r.out, "30.77%"));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "weight,n,shift,down,up,num_err,prop_err");
  int rows = 0;
  std::string line, last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  EXPECT_EQ(rows, 2041);
  EXPECT_EQ(last.rfind("#mean,", 0), 0u);
}

TEST_F(CliFiles, ConvRoundTrip) {
  std::mt19937_64 rng(17);
  const RandomLayer l = MakeRandomLayer(rng, {1, 7, 5, 3}, 4, 1);
  SaveQtf(l.ifm, Path("ifm.qtf"));
  SaveQtf(l.filters, Path("w.qtf"));
  for (const std::string alg : {"direct", "rat2x2", "rat4x4", "cplx4x4"}) {
    const CliRun r = Cli({"conv", "--algorithm", alg, "--in", Path("ifm.qtf"), "--filters",
                       Path("w.qtf"), "--padding", "1", "--out", Path("ofm.qtf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const QTensor ofm = LoadQtf(Path("ofm.qtf"));
    EXPECT_EQ(ofm.dtype(), DType::kI32);
    EXPECT_EQ(ofm.shape(), (Shape{1, 7, 5, 4}));
    const std::vector<int64_t> ref = oracle::PaddedConv(l.ifm, l.filters, 1);
    ASSERT_EQ(ofm.data().size(), ref.size());
    for (size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(ofm.data()[i], ref[i]) << alg;
  }
}

TEST_F(CliFiles, ConvMissingFile) {
  const CliRun r = Cli({"conv", "--in", Path("nope.qtf"), "--filters", Path("nope2.qtf"),
                     "--out", Path("o.qtf")});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliTest, SmallBench) {
  const CliRun r = Cli({"bench", "--shape", "1,6,6,2", "--out-channels", "2", "--trials", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* name : {"direct", "rat2x2", "rat4x4", "cplx4x4"})
    EXPECT_TRUE(Contains(r.out, name)) << name;
}

}  // namespace
}  // namespace winoint
