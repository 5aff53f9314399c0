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

#ifndef RSE_NELDER_MEAD_HPP
#define RSE_NELDER_MEAD_HPP

#include <cstddef>
#include <functional>

#include "rse/common.hpp"

namespace rse {

struct SimplexResult {
  RVector x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Downhill simplex minimization with the standard coefficients
/// (reflect 1, expand 2, contract 1/2, shrink 1/2). Stops when the spread
/// of simplex values falls below `ftol` or after `max_evals` evaluations.
SimplexResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& start,
                          double initial_step, std::size_t max_evals, double ftol);

}  // namespace rse

#endif  // RSE_NELDER_MEAD_HPP
