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

#include "dplls/loglik.h"

#include <cmath>

#include "dplls/error.h"

namespace dplls {
namespace {

void CheckArguments(const TransformedParams& params,
                    const StandardizedDataset& data) {
  Require(params.q > 0.0, ErrorCode::kDomain,
          "log-likelihood requires q > 0");
  Require(params.p.size() == data.features() + 1, ErrorCode::kShapeMismatch,
          "p must have d + 1 entries");
}

Vector Residuals(const TransformedParams& params,
                 const StandardizedDataset& data) {
  const Eigen::Index d = data.features();
  Vector z = data.y() * params.q - data.x() * params.p.tail(d);
  z.array() -= params.p(0);
  return z;
}

// Derivatives of the per-row contribution g(z) (excluding the log q term).
struct RowDerivatives {
  Vector first;
  Vector second;
};

RowDerivatives Derivatives(FamilyTag tag, const Vector& z) {
  RowDerivatives out{Vector(z.size()), Vector(z.size())};
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (tag == FamilyTag::kSev) {
      const double e = std::exp(z(i));
      out.first(i) = 1.0 - e;
      out.second(i) = -e;
    } else {
      // 1 - 2 s(z) and -2 s(z)(1 - s(z)), s the logistic function.
      const double s = 1.0 / (1.0 + std::exp(-z(i)));
      out.first(i) = 1.0 - 2.0 * s;
      out.second(i) = -2.0 * s * (1.0 - s);
    }
  }
  return out;
}

}  // namespace

double Log1pExp(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double LogLikSev(const TransformedParams& params,
                 const StandardizedDataset& data) {
  CheckArguments(params, data);
  const Vector z = Residuals(params, data);
  const double n = static_cast<double>(data.rows());
  return n * std::log(params.q) + z.sum() - z.array().exp().sum();
}

double LogLikLogistic(const TransformedParams& params,
                      const StandardizedDataset& data) {
  CheckArguments(params, data);
  const Vector z = Residuals(params, data);
  const double n = static_cast<double>(data.rows());
  double soft = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) soft += Log1pExp(z(i));
  return n * std::log(params.q) + z.sum() - 2.0 * soft;
}

double LogLik(const Family& family, const TransformedParams& params,
              const StandardizedDataset& data) {
  return family.tag == FamilyTag::kSev ? LogLikSev(params, data)
                                       : LogLikLogistic(params, data);
}

Vector LogLikGradient(const Family& family, const TransformedParams& params,
                      const StandardizedDataset& data) {
  CheckArguments(params, data);
  const Eigen::Index d = data.features();
  const RowDerivatives g = Derivatives(family.tag, Residuals(params, data));
  Vector grad(d + 2);
  // dz/dp_0 = -1, dz/dp_j = -x_ij, dz/dq = y_i.
  grad(0) = -g.first.sum();
  grad.segment(1, d) = -(data.x().transpose() * g.first);
  grad(d + 1) = static_cast<double>(data.rows()) / params.q +
                data.y().dot(g.first);
  return grad;
}

Matrix LogLikHessian(const Family& family, const TransformedParams& params,
                     const StandardizedDataset& data) {
  CheckArguments(params, data);
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.features();
  const RowDerivatives g = Derivatives(family.tag, Residuals(params, data));
  // Rows of `a` are dz_i/d(p, q).
  Matrix a(n, d + 2);
  a.col(0).setConstant(-1.0);
  a.middleCols(1, d) = -data.x();
  a.col(d + 1) = data.y();
  Matrix h = a.transpose() * g.second.asDiagonal() * a;
  h(d + 1, d + 1) -= static_cast<double>(n) / (params.q * params.q);
  return h;
}

}  // namespace dplls
