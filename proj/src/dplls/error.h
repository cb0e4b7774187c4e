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

#ifndef DPLLS_ERROR_H_
#define DPLLS_ERROR_H_

#include <stdexcept>
#include <string>

namespace dplls {

enum class ErrorCode {
  kInvalidArgument,
  kDomain,
  kShapeMismatch,
  kIo,
  kParse,
  kNotConverged,
  kDegenerateFit,
  kNumerical,
};

// Single exception type for the core library. The C API maps `code()` onto its
// integer status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the state the Newton iteration reached before giving up.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, int iterations,
                    double gradient_norm)
      : Error(ErrorCode::kNotConverged, message),
        iterations_(iterations),
        gradient_norm_(gradient_norm) {}

  int iterations() const noexcept { return iterations_; }
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  int iterations_;
  double gradient_norm_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace dplls

#endif  // DPLLS_ERROR_H_
