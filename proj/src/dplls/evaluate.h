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

#ifndef DPLLS_EVALUATE_H_
#define DPLLS_EVALUATE_H_

#include <optional>
#include <string_view>
#include <vector>

#include "dplls/standardize.h"
#include "dplls/types.h"

namespace dplls {

enum class PredictMode {
  kLocation,  // mu = beta_0 + sum_j x_j beta_j
  kMedian,    // median of the fitted error distribution
};

PredictMode ParsePredictMode(std::string_view name);

// `x_row` is raw; `params` live on the standardized scale. The result is on
// the original response scale.
double Predict(const ModelParams& params, const Vector& x_row,
               const ScalingSpec& spec, const Family& family,
               PredictMode mode = PredictMode::kLocation);

// Responses with |y| below this are excluded from error summaries.
inline constexpr double kNearZeroResponse = 1e-8;

// |y_hat - y| / |y|, or nullopt when |y| < kNearZeroResponse.
std::optional<double> RelativeError(double y_hat, double y_true);

struct ErrorSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  long long count = 0;
  long long excluded_near_zero = 0;
};

// Linear-interpolation quantile (numpy default) of unsorted data.
double Quantile(std::vector<double> values, double prob);

// Pooled quartiles. Throws on an empty vector.
ErrorSummary Summarize(const std::vector<double>& errors,
                       long long excluded_near_zero = 0);

}  // namespace dplls

#endif  // DPLLS_EVALUATE_H_
