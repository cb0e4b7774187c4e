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

#ifndef DPLLS_LOGLIK_H_
#define DPLLS_LOGLIK_H_

#include "dplls/standardize.h"
#include "dplls/types.h"

namespace dplls {

// Exact log-likelihoods in the concave (p, q) parameterization, with the
// intercept column x_i0 = 1 supplied implicitly. Residuals are
// z_i = y_i q - sum_j p_j x_ij.
//
//   SEV:      n log q + sum z_i - sum exp(z_i)
//   logistic: n log q + sum z_i - 2 sum log(1 + exp(z_i))
double LogLikSev(const TransformedParams& params, const StandardizedDataset& data);
double LogLikLogistic(const TransformedParams& params,
                      const StandardizedDataset& data);
double LogLik(const Family& family, const TransformedParams& params,
              const StandardizedDataset& data);

// Gradient with respect to (p_0..p_d, q); length d + 2.
Vector LogLikGradient(const Family& family, const TransformedParams& params,
                      const StandardizedDataset& data);

// (d + 2) x (d + 2) Hessian, same ordering as the gradient. Negative
// semidefinite for every q > 0.
Matrix LogLikHessian(const Family& family, const TransformedParams& params,
                     const StandardizedDataset& data);

// log(1 + e^z) without overflow.
double Log1pExp(double z);

}  // namespace dplls

#endif  // DPLLS_LOGLIK_H_
