// Copyright 2026 The rsekit Authors
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

#ifndef RSE_COMMON_HPP
#define RSE_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rse {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Fock level index |n>.
using Level = std::size_t;

inline constexpr double kPi = std::numbers::pi;

/// Invalid argument or value outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A target whose overlap with the reference state vanishes; no GOO
/// protocol starting from the reference can reach it.
class UnreachableTargetError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The reference state lies inside the target span, so no complement exists.
class DegenerateSubspaceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A documented precondition (resonance, defined phase, ...) does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Operation is defined only for a restricted case (e.g. a single target).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace rse

#endif  // RSE_COMMON_HPP
