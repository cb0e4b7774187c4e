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

#include "dplls/standardize.h"

#include <cmath>

#include "dplls/error.h"

namespace dplls {

StandardizedDataset::StandardizedDataset(Matrix x, Vector y, ScalingSpec spec,
                                         Family family)
    : x_(std::move(x)), y_(std::move(y)), spec_(std::move(spec)),
      family_(family) {
  Require(x_.rows() == y_.size(), ErrorCode::kShapeMismatch,
          "predictor and response row counts differ");
  Require(x_.cols() == spec_.features(), ErrorCode::kShapeMismatch,
          "scaling spec feature count differs from data");
}

Vector ModelScaleResponse(const Vector& y, const Family& family) {
  if (!family.log_response) return y;
  Require((y.array() > 0.0).all(), ErrorCode::kDomain,
          "log-response families need strictly positive responses");
  return y.array().log().matrix();
}

ScalingSpec FitScaling(const Dataset& data) {
  const Vector y = ModelScaleResponse(data.y(), data.family());
  Require(data.x().allFinite() && y.allFinite(), ErrorCode::kInvalidArgument,
          "cannot fit scaling on non-finite data");
  ScalingSpec spec;
  spec.alpha = data.x().colwise().minCoeff().transpose();
  spec.beta_max = data.x().colwise().maxCoeff().transpose();
  spec.y_lo = y.minCoeff();
  spec.y_hi = y.maxCoeff();
  return spec;
}

Vector ScaleRow(const Vector& x_row, const ScalingSpec& spec) {
  const Eigen::Index d = spec.features();
  Require(x_row.size() == d, ErrorCode::kShapeMismatch,
          "row has " + std::to_string(x_row.size()) + " features, spec has " +
              std::to_string(d));
  const double root_d = std::sqrt(static_cast<double>(d));
  Vector out(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double range = spec.beta_max(j) - spec.alpha(j);
    // A constant column carries no information; map it to zero.
    out(j) = range > 0.0 ? (x_row(j) - spec.alpha(j)) / (range * root_d) : 0.0;
  }
  return out;
}

double ScaleResponse(double y_model, const ScalingSpec& spec) {
  const double range = spec.y_hi - spec.y_lo;
  if (range <= 0.0) return 0.0;
  return 2.0 * (y_model - spec.y_lo) / range - 1.0;
}

StandardizedDataset ApplyScaling(const Dataset& data, const ScalingSpec& spec) {
  Require(data.features() == spec.features(), ErrorCode::kShapeMismatch,
          "dataset has " + std::to_string(data.features()) +
              " features, spec has " + std::to_string(spec.features()));
  const Eigen::Index n = data.rows();
  Matrix x(n, spec.features());
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = ScaleRow(data.x().row(i).transpose(), spec).transpose();
  }
  const Vector y_model = ModelScaleResponse(data.y(), data.family());
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = ScaleResponse(y_model(i), spec);
  return StandardizedDataset(std::move(x), std::move(y), spec, data.family());
}

double UnscaleResponse(double y_scaled, const ScalingSpec& spec,
                       const Family& family) {
  const double range = spec.y_hi - spec.y_lo;
  Require(range > 0.0, ErrorCode::kDomain,
          "degenerate response range (y_hi == y_lo)");
  const double y_model = (y_scaled + 1.0) * 0.5 * range + spec.y_lo;
  return family.log_response ? std::exp(y_model) : y_model;
}

}  // namespace dplls
