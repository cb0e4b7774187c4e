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

#include "dplls/types.h"

#include <cmath>

#include "dplls/error.h"

namespace dplls {

Family ParseFamily(std::string_view name) {
  if (name == "sev") return Family::Sev();
  if (name == "logistic") return Family::Logistic();
  if (name == "weibull") return Family::Weibull();
  if (name == "loglogistic") return Family::LogLogistic();
  Fail(ErrorCode::kInvalidArgument,
       "unknown family '" + std::string(name) +
           "' (expected sev, logistic, weibull or loglogistic)");
}

std::string FamilyName(const Family& family) {
  if (family.tag == FamilyTag::kSev) {
    return family.log_response ? "weibull" : "sev";
  }
  return family.log_response ? "loglogistic" : "logistic";
}

Dataset::Dataset(Matrix x, Vector y, Family family)
    : x_(std::move(x)), y_(std::move(y)), family_(family) {
  Require(x_.rows() >= 1, ErrorCode::kInvalidArgument,
          "dataset needs at least one row");
  Require(x_.cols() >= 1, ErrorCode::kInvalidArgument,
          "dataset needs at least one predictor");
  Require(x_.rows() == y_.size(), ErrorCode::kShapeMismatch,
          "predictor and response row counts differ");
  Require(x_.allFinite() && y_.allFinite(), ErrorCode::kInvalidArgument,
          "dataset contains non-finite values");
}

TransformedParams ToTransformed(const ModelParams& params) {
  Require(params.sigma > 0.0, ErrorCode::kDomain, "sigma must be positive");
  const double q = 1.0 / params.sigma;
  return {params.beta * q, q};
}

ModelParams ToModel(const TransformedParams& params) {
  Require(params.q > 0.0, ErrorCode::kDomain, "q must be positive");
  const double sigma = 1.0 / params.q;
  return {params.p * sigma, sigma};
}

}  // namespace dplls
