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

#include "dplls/evaluate.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dplls/error.h"
#include "unit/oracles.h"

namespace dplls {
namespace {

ScalingSpec UnitSpec(Eigen::Index d) {
  ScalingSpec spec;
  spec.alpha = Vector::Zero(d);
  spec.beta_max = Vector::Constant(d, std::sqrt(static_cast<double>(d)));
  spec.y_lo = 10.0;
  spec.y_hi = 30.0;
  return spec;
}

TEST(Predict, InterceptOnlyModel) {
  const ScalingSpec spec = UnitSpec(3);
  ModelParams params{Vector::Zero(4), 0.4};
  params.beta(0) = 0.25;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Vector x = oracle::Uniform(3, 1, -5.0, 5.0, seed).col(0);
    EXPECT_DOUBLE_EQ(Predict(params, x, spec, Family::Sev()),
                     UnscaleResponse(0.25, spec, Family::Sev()));
  }
}

TEST(Predict, LocationAffineInCoefficients) {
  const ScalingSpec spec = UnitSpec(2);
  ModelParams params{Vector(3), 1.0};
  params.beta << 0.1, -0.3, 0.7;
  ModelParams doubled{2.0 * params.beta, 1.0};
  const Vector x = oracle::Uniform(2, 1, 0.0, 1.0, 4).col(0);
  const double mu = ScaleResponse(Predict(params, x, spec, Family::Sev()), spec);
  const double mu2 =
      ScaleResponse(Predict(doubled, x, spec, Family::Sev()), spec);
  EXPECT_NEAR(mu2, 2.0 * mu, 1e-12);
}

TEST(Predict, MedianModeShiftsSevOnly) {
  const ScalingSpec spec = UnitSpec(1);
  ModelParams params{Vector::Zero(2), 0.5};
  const Vector x = Vector::Zero(1);
  const double loc = Predict(params, x, spec, Family::Sev());
  const double med =
      Predict(params, x, spec, Family::Sev(), PredictMode::kMedian);
  // Scaled shift sigma log(log 2), times half the response range.
  EXPECT_NEAR(med - loc, 0.5 * std::log(std::log(2.0)) * 10.0, 1e-12);
  EXPECT_EQ(Predict(params, x, spec, Family::Logistic(), PredictMode::kMedian),
            Predict(params, x, spec, Family::Logistic()));
}

TEST(Predict, LogFamilyExponentiates) {
  ScalingSpec spec = UnitSpec(1);
  spec.y_lo = 0.0;
  spec.y_hi = 4.0;
  ModelParams params{Vector::Zero(2), 1.0};
  EXPECT_NEAR(Predict(params, Vector::Zero(1), spec, Family::Weibull()),
              std::exp(2.0), 1e-12);
}

TEST(RelativeError, Examples) {
  EXPECT_NEAR(*RelativeError(1.1, 1.0), 0.1, 1e-15);
  EXPECT_EQ(*RelativeError(4.2, 4.2), 0.0);
  EXPECT_FALSE(RelativeError(3.0, 0.0).has_value());
  EXPECT_FALSE(RelativeError(3.0, 5e-9).has_value());
  EXPECT_TRUE(RelativeError(3.0, 2e-8).has_value());
}

TEST(RelativeError, ScaleInvariant) {
  const Vector v = oracle::Uniform(200, 1, -10.0, 10.0, 6).col(0);
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    const double base = *RelativeError(v(i), v(i + 1));
    for (double c : {-4.0, 0.5, 8.0}) {
      EXPECT_EQ(*RelativeError(c * v(i), c * v(i + 1)), base);
    }
  }
}

TEST(Summarize, OddSymmetricList) {
  const ErrorSummary s = Summarize({1, 2, 3, 4, 5});
  EXPECT_EQ(s.median, 3.0);
  EXPECT_EQ(s.q1, 2.0);
  EXPECT_EQ(s.q3, 4.0);
  EXPECT_EQ(s.iqr, 2.0);
  EXPECT_EQ(s.count, 5);
}

TEST(Summarize, ConstantVector) {
  const ErrorSummary s = Summarize(std::vector<double>(9, 0.37));
  EXPECT_EQ(s.median, 0.37);
  EXPECT_EQ(s.q1, 0.37);
  EXPECT_EQ(s.q3, 0.37);
  EXPECT_EQ(s.iqr, 0.0);
}

TEST(Summarize, MatchesSortOracle) {
  std::mt19937 gen(12);
  std::exponential_distribution<double> dist(2.0);
  std::vector<double> v(10000);
  for (double& x : v) x = dist(gen);
  const ErrorSummary s = Summarize(v, 3);
  EXPECT_EQ(s.median, oracle::SortedQuantile(v, 0.5));
  EXPECT_EQ(s.q1, oracle::SortedQuantile(v, 0.25));
  EXPECT_EQ(s.q3, oracle::SortedQuantile(v, 0.75));
  EXPECT_EQ(s.excluded_near_zero, 3);
  EXPECT_EQ(Quantile(v, 0.9), oracle::SortedQuantile(v, 0.9));
}

TEST(Summarize, PermutationInvariant) {
  std::vector<double> v = {5, 0.1, 3, 3, 8, 1.5, 2.25, 9, 0};
  const ErrorSummary a = Summarize(v);
  std::mt19937 gen(1);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(v.begin(), v.end(), gen);
    const ErrorSummary b = Summarize(v);
    EXPECT_EQ(a.median, b.median);
    EXPECT_EQ(a.q1, b.q1);
    EXPECT_EQ(a.q3, b.q3);
  }
}

TEST(Summarize, EmptyIsAnError) {
  EXPECT_THROW(Summarize({}), Error);
  EXPECT_THROW(Quantile({}, 0.5), Error);
}

TEST(ParsePredictMode, Names) {
  EXPECT_EQ(ParsePredictMode("location"), PredictMode::kLocation);
  EXPECT_EQ(ParsePredictMode("median"), PredictMode::kMedian);
  EXPECT_THROW(ParsePredictMode("mean"), Error);
}

}  // namespace
}  // namespace dplls
