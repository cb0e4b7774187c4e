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

#include "dplls/cmapss.h"

#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "dplls/error.h"
#include "unit/cmapss_fixture.h"
#include "unit/fixtures.h"
#include "unit/oracles.h"

namespace dplls {
namespace {

using testing::CmapssFixture;
using testing::WriteCmapssFixture;

TEST(IngestCmapss, CountsAndLifetimes) {
  const auto dir = testing::TempDir("cmapss_ingest");
  const CmapssFixture f = WriteCmapssFixture(dir, 12, 7, 1);
  const CmapssData data = IngestCmapss(f.train, f.test, f.truth);
  ASSERT_EQ(data.train.size(), 12u);
  ASSERT_EQ(data.test.size(), 7u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(data.train[i].engine_id, static_cast<int>(i + 1));
    EXPECT_EQ(data.train[i].cycles(), f.train_life[i]);
    EXPECT_EQ(data.train[i].ttf, f.train_life[i]);
    EXPECT_EQ(data.train[i].sensors.cols(), 21);
    EXPECT_EQ(data.train[i].settings.cols(), 3);
  }
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(data.test[i].cycles(), f.test_observed[i]);
    EXPECT_EQ(data.test[i].ttf, f.test_observed[i] + f.test_remaining[i]);
  }
}

TEST(IngestCmapss, RunToFailureEngine) {
  const auto dir = testing::TempDir("cmapss_192");
  std::mt19937 gen(2);
  {
    std::ofstream out(dir / "train.txt");
    testing::WriteEngine(out, 1, 192, 192, gen);
  }
  const auto signals = ParseCmapssFile(dir / "train.txt");
  ASSERT_EQ(signals.size(), 1u);
  EXPECT_EQ(signals[0].cycles(), 192);
  EXPECT_EQ(signals[0].cycle.back(), 192);
}

TEST(IngestCmapss, TruthLengthMismatchNamesPath) {
  const auto dir = testing::TempDir("cmapss_truth");
  const CmapssFixture f = WriteCmapssFixture(dir, 3, 4, 3);
  std::ofstream(f.truth) << "10\n20\n30\n";
  try {
    IngestCmapss(f.train, f.test, f.truth);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(f.truth.string()), std::string::npos);
  }
}

TEST(IngestCmapss, MissingFileNamesPath) {
  const auto dir = testing::TempDir("cmapss_missing");
  const CmapssFixture f = WriteCmapssFixture(dir, 3, 3, 4);
  std::filesystem::remove(f.truth);
  try {
    IngestCmapss(f.train, f.test, f.truth);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find(f.truth.string()), std::string::npos);
  }
}

TEST(ParseCmapssFile, RejectsMalformedRows) {
  const auto dir = testing::TempDir("cmapss_bad");
  std::ofstream(dir / "short.txt") << "1 1 0 0 100 1 2 3\n";
  EXPECT_THROW(ParseCmapssFile(dir / "short.txt"), Error);
  std::mt19937 gen(1);
  {
    std::ofstream out(dir / "gap.txt");
    testing::WriteEngine(out, 2, 3, 10, gen);
  }
  EXPECT_THROW(ParseCmapssFile(dir / "gap.txt"), Error);
}

TEST(SerializeCmapss, RoundTripsNumericContent) {
  const auto dir = testing::TempDir("cmapss_roundtrip");
  const CmapssFixture f = WriteCmapssFixture(dir, 5, 2, 5);
  const auto first = ParseCmapssFile(f.train);
  std::ofstream(dir / "again.txt") << SerializeCmapss(first);
  const auto second = ParseCmapssFile(dir / "again.txt");
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].cycle, second[i].cycle);
    EXPECT_EQ(first[i].sensors, second[i].sensors);
    EXPECT_EQ(first[i].settings, second[i].settings);
  }
}

TEST(TruncateSignals, KeepsLongEnoughEngines) {
  const auto dir = testing::TempDir("cmapss_truncate");
  const CmapssFixture f = WriteCmapssFixture(dir, 40, 30, 6);
  const CmapssData data = IngestCmapss(f.train, f.test, f.truth);
  const auto train = TruncateSignals(data.train, 150);
  const auto test = TruncateSignals(data.test, 150);
  const auto want_train = std::count_if(f.train_life.begin(), f.train_life.end(),
                                        [](int l) { return l >= 150; });
  long want_test = 0;
  for (std::size_t i = 0; i < f.test_observed.size(); ++i) {
    if (f.test_observed[i] >= 150) ++want_test;
  }
  EXPECT_EQ(static_cast<long>(train.size()), want_train);
  EXPECT_EQ(static_cast<long>(test.size()), want_test);
  for (const auto& s : train) EXPECT_EQ(s.cycles(), 150);
}

TEST(TruncateSignals, HorizonOneKeepsEverything) {
  const auto dir = testing::TempDir("cmapss_h1");
  const CmapssFixture f = WriteCmapssFixture(dir, 6, 4, 7);
  const CmapssData data = IngestCmapss(f.train, f.test, f.truth);
  const auto cut = TruncateSignals(data.train, 1);
  ASSERT_EQ(cut.size(), 6u);
  for (const auto& s : cut) EXPECT_EQ(s.cycles(), 1);
}

TEST(TruncateSignals, BoundaryLifeIsExcluded) {
  EngineSignal s;
  s.engine_id = 1;
  s.ttf = 149;
  s.sensors = Matrix::Zero(149, 21);
  s.settings = Matrix::Zero(149, 3);
  s.cycle.resize(149);
  EXPECT_TRUE(TruncateSignals({s}, 150).empty());
  s.ttf = 150;
  s.sensors = Matrix::Zero(150, 21);
  s.settings = Matrix::Zero(150, 3);
  s.cycle.resize(150);
  EXPECT_EQ(TruncateSignals({s}, 150).size(), 1u);
}

TEST(FlattenSignal, SensorMajorOneBased) {
  EngineSignal s;
  s.sensors = Matrix(2, 21);
  for (int c = 0; c < 21; ++c) {
    s.sensors(0, c) = 100 + c;
    s.sensors(1, c) = 200 + c;
  }
  const Vector flat = FlattenSignal(s, {4, 17});
  Vector want(4);
  want << 103, 203, 116, 216;
  EXPECT_EQ(flat, want);
  EXPECT_THROW(FlattenSignal(s, {0}), Error);
  EXPECT_THROW(FlattenSignal(s, {22}), Error);
}

TEST(FitPca, OrthonormalBasis) {
  const Matrix rows = oracle::Uniform(40, 12, -1.0, 1.0, 3);
  const PcaBasis basis = FitPca(rows);
  const Matrix g = basis.components.leftCols(basis.rank);
  EXPECT_LE((g.transpose() * g - Matrix::Identity(basis.rank, basis.rank))
                .cwiseAbs()
                .maxCoeff(),
            1e-10);
  EXPECT_EQ(basis.rank, 12);
}

TEST(FitPca, FullRankReconstructionIsExact) {
  const Matrix rows = oracle::Uniform(30, 8, -3.0, 3.0, 4);
  const PcaBasis basis = FitPca(rows);
  const Matrix scores = ProjectPca(basis, rows, basis.rank);
  const Matrix centered = rows.rowwise() - basis.mean.transpose();
  const Matrix back = scores * basis.components.leftCols(basis.rank).transpose();
  EXPECT_LE((back - centered).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FitPca, MatchesCovarianceEigenOracle) {
  // 94 engines by 450 flattened readings, rank limited to 93 by centering.
  const Matrix base = oracle::Uniform(94, 6, -1.0, 1.0, 5);
  const Matrix mix = oracle::Uniform(6, 450, -1.0, 1.0, 6);
  const Matrix rows = base * mix + 0.01 * oracle::Uniform(94, 450, -1, 1, 7);
  const PcaBasis basis = FitPca(rows);

  const Vector mean = rows.colwise().mean().transpose();
  const Matrix centered = rows.rowwise() - mean.transpose();
  const Matrix cov = centered.transpose() * centered / 93.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  for (int k = 0; k < 5; ++k) {
    const Eigen::Index col = 449 - k;  // ascending order
    Vector v = eig.eigenvectors().col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    EXPECT_NEAR(basis.variances(k), eig.eigenvalues()(col),
                1e-9 * eig.eigenvalues()(col));
    const Vector want = centered * v;
    const Vector got = ProjectPca(basis, rows, k + 1).col(k);
    EXPECT_LE((want - got).cwiseAbs().maxCoeff(), 1e-8 * want.cwiseAbs().maxCoeff())
        << "component " << k;
  }
  EXPECT_LE(basis.rank, 93);
}

TEST(ProjectPca, RejectsTooManyComponents) {
  const Matrix rows = oracle::Uniform(4, 10, -1.0, 1.0, 8);
  const PcaBasis basis = FitPca(rows);
  EXPECT_EQ(basis.rank, 3);
  EXPECT_THROW(ProjectPca(basis, rows, 4), Error);
  EXPECT_THROW(ProjectPca(basis, rows, 0), Error);
}

TEST(PcaFuse, TestEnginesDoNotInfluenceTrainingFeatures) {
  const auto dir = testing::TempDir("cmapss_isolation");
  const CmapssFixture f = WriteCmapssFixture(dir, 30, 40, 9);
  const CmapssData data = IngestCmapss(f.train, f.test, f.truth);
  const auto train = TruncateSignals(data.train, 120);
  const auto test = TruncateSignals(data.test, 120);
  ASSERT_GE(test.size(), 2u);
  const FusedSplit with = PcaFuse(train, test, {4, 17, 20}, 3);
  const FusedSplit without = PcaFuse(train, {}, {4, 17, 20}, 3);
  const std::vector<EngineSignal> half(test.begin(), test.begin() + 1);
  const FusedSplit partial = PcaFuse(train, half, {4, 17, 20}, 3);
  ASSERT_EQ(with.train.size(), without.train.size());
  for (std::size_t i = 0; i < with.train.size(); ++i) {
    EXPECT_EQ(with.train[i].features, without.train[i].features);
    EXPECT_EQ(with.train[i].ttf, without.train[i].ttf);
  }
  EXPECT_TRUE(partial.test[0].features.isApprox(with.test[0].features, 1e-12));
  EXPECT_TRUE(without.test.empty());
}

TEST(RunCaseStudy, CellsAndDeterminism) {
  const auto dir = testing::TempDir("cmapss_study");
  const CmapssFixture f = WriteCmapssFixture(dir, 60, 60, 10);
  const CmapssData raw = IngestCmapss(f.train, f.test, f.truth);
  CmapssData cut{TruncateSignals(raw.train, 100), TruncateSignals(raw.test, 100)};
  CaseStudyConfig config;
  config.repetitions = 6;
  config.threads = 1;
  const auto a = RunCaseStudy(cut, config, SweepFactor::kDimension, {3, 4, 5, 6});
  config.threads = 3;
  const auto b = RunCaseStudy(cut, config, SweepFactor::kDimension, {3, 4, 5, 6});
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t c = 0; c < a.size(); ++c) {
    EXPECT_EQ(a[c].dp.errors, b[c].dp.errors);
    EXPECT_EQ(a[c].nondp.errors, b[c].nondp.errors);
    EXPECT_EQ(a[c].dp.errors.size() + a[c].dp.failures * cut.test.size(),
              6 * cut.test.size());
    EXPECT_EQ(a[c].nondp.errors.size(), cut.test.size());
    EXPECT_EQ(a[c].factor, "dimension");
  }
  const auto eps = RunCaseStudy(cut, config, SweepFactor::kEpsilon, {0.5, 5});
  EXPECT_EQ(eps.size(), 2u);
  EXPECT_THROW(RunCaseStudy(cut, config, SweepFactor::kSampleSize, {10}), Error);
}

}  // namespace
}  // namespace dplls
