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

#ifndef DPLLS_STANDARDIZE_H_
#define DPLLS_STANDARDIZE_H_

#include "dplls/types.h"

namespace dplls {

// Per-feature bounds and response range fitted on a training set. Treated as
// public information by the privacy analysis.
struct ScalingSpec {
  Vector alpha;     // per-feature minimum
  Vector beta_max;  // per-feature maximum
  double y_lo = 0.0;
  double y_hi = 0.0;

  Eigen::Index features() const { return alpha.size(); }
};

// Scaled predictors lie in [0, 1/sqrt(d)] and responses in [-1, 1] for rows
// of the set the spec was fitted on, so every row has Euclidean norm <= 1.
class StandardizedDataset {
 public:
  StandardizedDataset(Matrix x, Vector y, ScalingSpec spec, Family family);

  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  const ScalingSpec& spec() const { return spec_; }
  const Family& family() const { return family_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index features() const { return x_.cols(); }

 private:
  Matrix x_;
  Vector y_;
  ScalingSpec spec_;
  Family family_;
};

// Response on the modelling scale: log(y) for log-response families.
Vector ModelScaleResponse(const Vector& y, const Family& family);

ScalingSpec FitScaling(const Dataset& data);

// Rows outside the fitting set are not clipped.
StandardizedDataset ApplyScaling(const Dataset& data, const ScalingSpec& spec);

Vector ScaleRow(const Vector& x_row, const ScalingSpec& spec);

// Model-scale y -> [-1, 1].
double ScaleResponse(double y_model, const ScalingSpec& spec);

// [-1, 1] -> original response scale (exponentiated for log families).
double UnscaleResponse(double y_scaled, const ScalingSpec& spec,
                       const Family& family);

}  // namespace dplls

#endif  // DPLLS_STANDARDIZE_H_
