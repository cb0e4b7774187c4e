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

// Independent reference implementations used as test oracles. Nothing here
// calls into the library's numerical code.

#ifndef DPLLS_TESTS_UNIT_ORACLES_H_
#define DPLLS_TESTS_UNIT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Row-by-row exact log-likelihood in long double. `p` includes the intercept.
inline double LogLik(bool sev, const MatrixXd& x, const VectorXd& y,
                     const VectorXd& p, double q) {
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    long double z = static_cast<long double>(y(i)) * q - p(0);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      z -= static_cast<long double>(p(j + 1)) * x(i, j);
    }
    total += std::log(static_cast<long double>(q)) + z;
    total -= sev ? std::exp(z) : 2.0L * std::log1p(std::exp(z));
  }
  return static_cast<double>(total);
}

// Second-order Taylor objective summed term by term around z = 0, q = 1:
//   log q   ~ -3/2 + 2q - q^2/2
//   SEV:      z - e^z            ~ -1 - z^2/2
//   logistic: z - 2 log(1 + e^z) ~ -2 log 2 - z^2/4
inline double TruncatedObjective(bool sev, const MatrixXd& x,
                                 const VectorXd& y, const VectorXd& p,
                                 double q) {
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    long double z = static_cast<long double>(y(i)) * q - p(0);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      z -= static_cast<long double>(p(j + 1)) * x(i, j);
    }
    total += -1.5L + 2.0L * q - 0.5L * q * q;
    total += sev ? -1.0L - 0.5L * z * z
                 : -2.0L * std::numbers::ln2_v<long double> - 0.25L * z * z;
  }
  return static_cast<double>(total);
}

// Central differences of f at v with step h.
inline VectorXd CentralGradient(const std::function<double(const VectorXd&)>& f,
                                const VectorXd& v, double h) {
  VectorXd g(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    VectorXd up = v, down = v;
    up(k) += h;
    down(k) -= h;
    g(k) = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

inline MatrixXd CentralHessian(const std::function<double(const VectorXd&)>& f,
                               const VectorXd& v, double h) {
  const Eigen::Index m = v.size();
  MatrixXd hess(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      auto at = [&](double sa, double sb) {
        VectorXd w = v;
        w(a) += sa * h;
        w(b) += sb * h;
        return f(w);
      };
      hess(a, b) =
          (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
    }
  }
  return hess;
}

// Plain gradient ascent with step 1/L on a concave function with Lipschitz
// gradient constant L.
inline VectorXd GradientAscent(
    const std::function<VectorXd(const VectorXd&)>& grad, VectorXd v,
    double lipschitz, int iterations) {
  for (int t = 0; t < iterations; ++t) v += grad(v) / lipschitz;
  return v;
}

// Sort, then interpolate between order statistics at h = (n - 1) prob.
inline double SortedQuantile(std::vector<double> v, double prob) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline VectorXd ColumnMin(const MatrixXd& x) {
  VectorXd out(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double m = x(0, j);
    for (Eigen::Index i = 1; i < x.rows(); ++i) m = std::min(m, x(i, j));
    out(j) = m;
  }
  return out;
}

inline VectorXd ColumnMax(const MatrixXd& x) {
  VectorXd out(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double m = x(0, j);
    for (Eigen::Index i = 1; i < x.rows(); ++i) m = std::max(m, x(i, j));
    out(j) = m;
  }
  return out;
}

// Random matrix with entries uniform on [lo, hi].
inline MatrixXd Uniform(Eigen::Index rows, Eigen::Index cols, double lo,
                        double hi, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::uniform_real_distribution<double> u(lo, hi);
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(gen);
  }
  return m;
}

}  // namespace oracle

#endif  // DPLLS_TESTS_UNIT_ORACLES_H_
