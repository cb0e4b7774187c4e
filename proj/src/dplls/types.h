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

#ifndef DPLLS_TYPES_H_
#define DPLLS_TYPES_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dplls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class FamilyTag { kSev, kLogistic };

// Error distribution of the (log-)response. `log_response` selects the
// Weibull / log-logistic reading y = log(t); the likelihood math is the same.
struct Family {
  FamilyTag tag = FamilyTag::kSev;
  bool log_response = false;

  static constexpr Family Sev() { return {FamilyTag::kSev, false}; }
  static constexpr Family Logistic() { return {FamilyTag::kLogistic, false}; }
  static constexpr Family Weibull() { return {FamilyTag::kSev, true}; }
  static constexpr Family LogLogistic() { return {FamilyTag::kLogistic, true}; }

  friend constexpr bool operator==(const Family&, const Family&) = default;
};

// Accepts sev, logistic, weibull, loglogistic (case sensitive).
Family ParseFamily(std::string_view name);
std::string FamilyName(const Family& family);

// Raw predictors and responses. The intercept column is never stored.
class Dataset {
 public:
  Dataset(Matrix x, Vector y, Family family);

  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  const Family& family() const { return family_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index features() const { return x_.cols(); }

 private:
  Matrix x_;
  Vector y_;
  Family family_;
};

// Natural-scale parameters: beta(0) is the intercept.
struct ModelParams {
  Vector beta;
  double sigma = 1.0;
};

// q = 1/sigma, p_j = beta_j * q. The log-likelihood is concave in (p, q).
struct TransformedParams {
  Vector p;
  double q = 1.0;
};

TransformedParams ToTransformed(const ModelParams& params);
ModelParams ToModel(const TransformedParams& params);

}  // namespace dplls

#endif  // DPLLS_TYPES_H_
