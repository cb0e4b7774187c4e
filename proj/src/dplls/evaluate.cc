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
#include <string>

#include "dplls/error.h"

namespace dplls {
namespace {

double SortedQuantile(const std::vector<double>& sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

PredictMode ParsePredictMode(std::string_view name) {
  if (name == "location") return PredictMode::kLocation;
  if (name == "median") return PredictMode::kMedian;
  Fail(ErrorCode::kInvalidArgument,
       "unknown predict mode '" + std::string(name) +
           "' (expected location or median)");
}

double Predict(const ModelParams& params, const Vector& x_row,
               const ScalingSpec& spec, const Family& family,
               PredictMode mode) {
  Require(params.beta.size() == spec.features() + 1, ErrorCode::kShapeMismatch,
          "coefficient vector does not match the scaling spec");
  const Vector x = ScaleRow(x_row, spec);
  double mu = params.beta(0) + x.dot(params.beta.tail(spec.features()));
  if (mode == PredictMode::kMedian && family.tag == FamilyTag::kSev) {
    // SEV median: mu + sigma log(log 2). Logistic median is mu.
    mu += params.sigma * std::log(std::log(2.0));
  }
  return UnscaleResponse(mu, spec, family);
}

std::optional<double> RelativeError(double y_hat, double y_true) {
  if (std::abs(y_true) < kNearZeroResponse) return std::nullopt;
  return std::abs(y_hat - y_true) / std::abs(y_true);
}

double Quantile(std::vector<double> values, double prob) {
  Require(!values.empty(), ErrorCode::kInvalidArgument,
          "quantile of an empty vector");
  std::sort(values.begin(), values.end());
  return SortedQuantile(values, prob);
}

ErrorSummary Summarize(const std::vector<double>& errors,
                       long long excluded_near_zero) {
  Require(!errors.empty(), ErrorCode::kInvalidArgument,
          "cannot summarize an empty error vector");
  std::vector<double> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  ErrorSummary s;
  s.q1 = SortedQuantile(sorted, 0.25);
  s.median = SortedQuantile(sorted, 0.5);
  s.q3 = SortedQuantile(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  s.count = static_cast<long long>(sorted.size());
  s.excluded_near_zero = excluded_near_zero;
  return s;
}

}  // namespace dplls
