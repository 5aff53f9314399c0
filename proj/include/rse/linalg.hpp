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

#ifndef RSE_LINALG_HPP
#define RSE_LINALG_HPP

#include "rse/common.hpp"

namespace rse::linalg {

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant (degree 3, 5, 7, 9 or 13, selected from the 1-norm so that
/// the backward error stays below unit roundoff).
CMatrix expm(const CMatrix& a);

/// exp(-i h t) for Hermitian h, via the eigendecomposition of h.
CMatrix hermitian_propagator(const CMatrix& h, double t);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_error(const CMatrix& u);

/// max_ij |(H - H^dagger)_ij|
double hermiticity_error(const CMatrix& h);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace rse::linalg

#endif  // RSE_LINALG_HPP
