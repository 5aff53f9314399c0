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

#ifndef RSE_FOCKSPACE_HPP
#define RSE_FOCKSPACE_HPP

#include <cstddef>

#include "rse/common.hpp"

namespace rse {

/// Truncated single-mode bosonic space spanned by |0>, ..., |dim-1>.
class FockSpace {
 public:
  explicit FockSpace(std::size_t dim);

  std::size_t dim() const { return dim_; }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  std::size_t dim_;
};

/// Pure state of a truncated bosonic mode, stored as dense complex
/// amplitudes in the Fock basis.
class BosonicState {
 public:
  BosonicState(FockSpace space, CVector amplitudes);

  const FockSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Level n) const { return amplitudes_[static_cast<Eigen::Index>(n)]; }

  double norm() const { return amplitudes_.norm(); }

  /// Returns a unit-norm copy. Throws DomainError on a zero vector.
  BosonicState normalized() const;

 private:
  FockSpace space_;
  CVector amplitudes_;
};

BosonicState fock_state(const FockSpace& space, Level n);

/// Truncated coherent state, renormalized on the retained levels.
/// Amplitudes e^{-|a|^2/2} a^n / sqrt(n!) are evaluated in log space so that
/// levels beyond n = 170 do not overflow.
BosonicState coherent_state(const FockSpace& space, Complex alpha);

/// Raw (untruncated, unnormalized) coherent amplitude <n|alpha>.
Complex coherent_amplitude(Complex alpha, Level n);

/// <a|b>, conjugate-linear in a.
Complex inner(const BosonicState& a, const BosonicState& b);

/// |<a|b>|^2 clamped to [0, 1].
double fidelity(const BosonicState& a, const BosonicState& b);

/// Truncation rule: max(n_max + 25, ceil(|alpha|^2 + 8|alpha| + 20)).
std::size_t recommended_dim(Complex alpha, Level n_max);

}  // namespace rse

#endif  // RSE_FOCKSPACE_HPP
