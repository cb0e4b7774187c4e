// Copyright 2026 The dplls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dplls/simgen.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "dplls/csv_io.h"
#include "dplls/error.h"
#include "dplls/functional_mechanism.h"
#include "unit/fixtures.h"

namespace dplls {
namespace {

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::vector<std::string>> ReadRecords(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(SplitCsvRecord(line));
  }
  return rows;
}

SimConfig SmallConfig() {
  SimConfig c;
  c.n = 600;
  c.d = 3;
  c.epsilon = 2.0;
  c.repetitions = 4;
  return c;
}

TEST(Distributions, SevMeanIsMinusEulerGamma) {
  Rng rng(5);
  double sum = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) sum += SevQuantile(UniformOpen(rng));
  EXPECT_NEAR(sum / draws, -std::numbers::egamma, 0.01);
}

TEST(Distributions, LogisticVarianceIsPiSquaredOverThree) {
  Rng rng(6);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    const double v = LogisticQuantile(UniformOpen(rng));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  const double want = std::numbers::pi * std::numbers::pi / 3.0;
  EXPECT_NEAR(sum_sq / draws - mean * mean, want, 0.02 * want);
}

TEST(Distributions, QuantilesInvertCdfs) {
  for (double u : {0.01, 0.3, 0.5, 0.9}) {
    const double s = SevQuantile(u);
    EXPECT_NEAR(1.0 - std::exp(-std::exp(s)), u, 1e-14);
    const double l = LogisticQuantile(u);
    EXPECT_NEAR(1.0 / (1.0 + std::exp(-l)), u, 1e-14);
  }
}

TEST(GenerateSynthetic, SameSeedSameData) {
  const SyntheticData a = GenerateSynthetic(50, 4, Family::Logistic(), 3);
  const SyntheticData b = GenerateSynthetic(50, 4, Family::Logistic(), 3);
  EXPECT_EQ(a.data.x(), b.data.x());
  EXPECT_EQ(a.data.y(), b.data.y());
  EXPECT_EQ(a.truth.beta, b.truth.beta);
  const SyntheticData c = GenerateSynthetic(50, 4, Family::Logistic(), 4);
  EXPECT_NE(a.data.y(), c.data.y());
}

TEST(GenerateSynthetic, LogFamilyStoresPositiveTimes) {
  const SyntheticData w = GenerateSynthetic(200, 2, Family::Weibull(), 9);
  const SyntheticData s = GenerateSynthetic(200, 2, Family::Sev(), 9);
  EXPECT_TRUE((w.data.y().array() > 0.0).all());
  EXPECT_TRUE(w.data.y().array().log().matrix().isApprox(s.data.y(), 1e-12));
}

TEST(GenerateSynthetic, ResidualsFollowTheErrorLaw) {
  const SyntheticData s = GenerateSynthetic(200000, 2, Family::Sev(), 1);
  const Vector resid = s.data.y() - s.truth.beta(0) * Vector::Ones(200000) -
                       s.data.x() * s.truth.beta.tail(2);
  EXPECT_NEAR(resid.mean(), -std::numbers::egamma, 0.01);
  EXPECT_EQ(s.truth.sigma, 1.0);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(7, 2), DeriveSeed(7, 2));
}

TEST(SimConfig, Validation) {
  SimConfig c = SmallConfig();
  EXPECT_NO_THROW(c.Validate());
  c.n = 5;
  EXPECT_THROW(c.Validate(), Error);
  c = SmallConfig();
  c.epsilon = 0.0;
  EXPECT_THROW(c.Validate(), Error);
  c = SmallConfig();
  c.repetitions = 0;
  EXPECT_THROW(c.Validate(), Error);
  EXPECT_THROW(WithFactor(SmallConfig(), SweepFactor::kDimension, 2.5), Error);
}

TEST(RunTrial, Deterministic) {
  const SimConfig c = SmallConfig();
  const TrialResult a = RunTrial(c, 2);
  const TrialResult b = RunTrial(c, 2);
  EXPECT_EQ(a.dp.errors, b.dp.errors);
  EXPECT_EQ(a.nondp.errors, b.nondp.errors);
  EXPECT_EQ(a.dp.errors.size() + a.dp.excluded_near_zero, 120u);
}

TEST(RunTrial, VanishingNoiseMatchesExactFit) {
  SimConfig c;
  c.n = 10000;
  c.d = 5;
  c.epsilon = 1e12;
  c.repetitions = 1;
  const TrialResult t = RunTrial(c, 0);
  ASSERT_FALSE(t.dp.failed);
  ASSERT_FALSE(t.nondp.failed);
  EXPECT_NEAR(Summarize(t.dp.errors).median, Summarize(t.nondp.errors).median,
              0.05);
}

TEST(ArmPool, FailuresAreCountedNotImputed) {
  ArmPool pool;
  ArmErrors ok{{0.1, 0.2}, 1, false, ""};
  ArmErrors bad;
  bad.failed = true;
  bad.failure = "boom";
  PoolArm(pool, ok, 0);
  PoolArm(pool, bad, 1);
  FinalizePool(pool);
  EXPECT_EQ(pool.failures, 1);
  ASSERT_TRUE(pool.summary.has_value());
  EXPECT_EQ(pool.summary->count, 2);
  EXPECT_EQ(pool.summary->excluded_near_zero, 1);
  EXPECT_EQ(pool.repetition, (std::vector<int>{0, 0}));

  ArmPool empty;
  PoolArm(empty, bad, 0);
  FinalizePool(empty);
  EXPECT_FALSE(empty.summary.has_value());
}

TEST(RunSweep, SingleValueSingleRepetitionWrapsTrial) {
  SimConfig c = SmallConfig();
  c.repetitions = 1;
  const auto cells = RunSweep(SweepFactor::kEpsilon, c, {0.5});
  ASSERT_EQ(cells.size(), 1u);
  SimConfig at = c;
  at.epsilon = 0.5;
  const TrialResult t = RunTrial(at, 0);
  EXPECT_EQ(cells[0].dp.errors, t.dp.errors);
  EXPECT_EQ(cells[0].nondp.errors, t.nondp.errors);
  EXPECT_EQ(cells[0].factor, "epsilon");
}

TEST(RunSweep, OneCellPerValue) {
  SimConfig c = SmallConfig();
  c.repetitions = 1;
  const auto cells =
      RunSweep(SweepFactor::kDimension, c, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(cells.size(), 10u);
  EXPECT_EQ(cells[9].value, 10.0);
}

TEST(WriteSweepOutputs, IdenticalAcrossThreadCounts) {
  SimConfig c = SmallConfig();
  c.threads = 1;
  const auto one = RunSweep(SweepFactor::kSampleSize, c, {300, 600});
  c.threads = 3;
  const auto three = RunSweep(SweepFactor::kSampleSize, c, {300, 600});
  const auto dir_a = testing::TempDir("sweep_a");
  const auto dir_b = testing::TempDir("sweep_b");
  std::vector<std::filesystem::path> written_a, written_b;
  WriteSweepOutputs(one, dir_a, &written_a);
  WriteSweepOutputs(three, dir_b, &written_b);
  ASSERT_EQ(written_a, written_b);
  EXPECT_EQ(written_a.back(), "summary.csv");
  for (const auto& rel : written_a) {
    EXPECT_EQ(Slurp(dir_a / rel), Slurp(dir_b / rel)) << rel;
  }
}

TEST(WriteSweepOutputs, SummaryRowsMatchRawFiles) {
  const auto cells = RunSweep(SweepFactor::kEpsilon, SmallConfig(), {0.5, 4});
  const auto dir = testing::TempDir("sweep_summary");
  const auto records = WriteSweepOutputs(cells, dir);
  const auto summary = ReadRecords(dir / "summary.csv");
  ASSERT_EQ(summary.size(), 1 + records.size());
  EXPECT_EQ(summary[0], (std::vector<std::string>{"factor", "value", "arm",
                                                  "median", "q1", "q3",
                                                  "count", "failures"}));
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto raw = ReadRecords(dir / records[r].raw_errors_path);
    ASSERT_EQ(raw[0], (std::vector<std::string>{"repetition", "error"}));
    std::vector<double> errors;
    for (std::size_t i = 1; i < raw.size(); ++i) {
      errors.push_back(ParseDouble(raw[i][1], "raw"));
    }
    const ErrorSummary s = Summarize(errors);
    const auto& row = summary[r + 1];
    EXPECT_EQ(row[2], records[r].arm);
    EXPECT_EQ(ParseDouble(row[3], "median"), s.median);
    EXPECT_EQ(ParseDouble(row[4], "q1"), s.q1);
    EXPECT_EQ(ParseDouble(row[5], "q3"), s.q3);
    EXPECT_EQ(std::stoll(row[6]), s.count);
  }
}

TEST(WriteSweepOutputs, CsvUsesCrLf) {
  SimConfig c = SmallConfig();
  c.repetitions = 1;
  const auto dir = testing::TempDir("sweep_crlf");
  WriteSweepOutputs(RunSweep(SweepFactor::kEpsilon, c, {1}), dir);
  const std::string text = Slurp(dir / "summary.csv");
  EXPECT_NE(text.find("failures\r\n"), std::string::npos);
}

TEST(SweepFactor, Names) {
  for (auto f : {SweepFactor::kDimension, SweepFactor::kSampleSize,
                 SweepFactor::kEpsilon}) {
    EXPECT_EQ(ParseSweepFactor(SweepFactorName(f)), f);
  }
  EXPECT_THROW(ParseSweepFactor("rows"), Error);
}

}  // namespace
}  // namespace dplls
