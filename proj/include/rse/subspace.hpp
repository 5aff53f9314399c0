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

#ifndef RSE_SUBSPACE_HPP
#define RSE_SUBSPACE_HPP

#include <optional>
#include <vector>

#include "rse/common.hpp"
#include "rse/fockspace.hpp"

namespace rse {

/// The (K+1)-dimensional invariant subspace spanned by K orthonormal targets
/// and a reference state. Basis order is [targets..., complement], where the
/// complement is the normalized part of the reference orthogonal to every
/// target.
class SubspaceModel {
 public:
  const FockSpace& space() const { return reference_.space(); }
  std::size_t num_targets() const { return targets_.size(); }
  std::size_t reduced_dim() const { return targets_.size() + 1; }

  const std::vector<BosonicState>& targets() const { return targets_; }
  const BosonicState& reference() const { return reference_; }
  const BosonicState& complement() const { return complement_; }

  /// mu_k = <target_k|reference>
  const CVector& overlaps() const { return overlaps_; }

  /// arg(mu) for a single target; nullopt when K > 1.
  std::optional<double> theta() const;

  /// sqrt(1 - sum |mu_k|^2), the complement coefficient of the reference.
  double complement_weight() const { return complement_weight_; }

  /// Basis state i: a target for i < K, the complement for i == K.
  const BosonicState& basis(std::size_t i) const;

  /// dim x (K+1) matrix whose columns are the basis states.
  const CMatrix& basis_matrix() const { return basis_matrix_; }

  /// Reduced coordinates of the reference: (mu_1, ..., mu_K, complement_weight).
  CVector reference_coords() const;

 private:
  friend SubspaceModel build_subspace(std::vector<BosonicState> targets, BosonicState reference);

  SubspaceModel(std::vector<BosonicState> targets, BosonicState reference, CVector overlaps,
                double complement_weight, BosonicState complement, CMatrix basis_matrix);

  std::vector<BosonicState> targets_;
  BosonicState reference_;
  CVector overlaps_;
  double complement_weight_;
  BosonicState complement_;
  CMatrix basis_matrix_;
};

/// Throws DomainError for non-orthonormal targets (tolerance 1e-8),
/// UnreachableTargetError when some |mu_k| <= 1e-8 and
/// DegenerateSubspaceError when the reference lies in the target span.
SubspaceModel build_subspace(std::vector<BosonicState> targets, BosonicState reference);

/// Effective generator H = w_ref |ref><ref| + sum_k w_k |target_k><target_k|
/// projected onto the subspace basis. Units follow the weights.
struct ReducedHamiltonian {
  CMatrix matrix;
  double reference_weight = 0.0;
  std::vector<double> target_weights;

  Complex element(std::size_t i, std::size_t j) const {
    return matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

ReducedHamiltonian reduced_hamiltonian(const SubspaceModel& model, double reference_weight,
                                       const std::vector<double>& target_weights);

/// Dense full-space H for the same weights (dim x dim).
CMatrix full_hamiltonian(const SubspaceModel& model, double reference_weight,
                         const std::vector<double>& target_weights);

/// Target weight putting the two reduced levels on resonance:
/// omega = Omega (1 - 2 |mu|^2). Single target only.
double resonance_weight(const SubspaceModel& model, double reference_weight);

/// Wrapped arg(H_12) - theta - pi/2 in (-pi, pi]; zero when the resonant
/// rotation passes through the reference without a pre-rotation.
double phase_matching_mismatch(const SubspaceModel& model, const ReducedHamiltonian& h);

struct TransferTime {
  double time = 0.0;   ///< arccos(|mu|) / |H_12|
  double bound = 0.0;  ///< pi / (2 Omega |mu|), an upper bound on time
};

/// Requires a single target on resonance, |H_11 - H_22| < 1e-9 |H_12|.
TransferTime transfer_time(const SubspaceModel& model, const ReducedHamiltonian& h);

CVector project_state(const SubspaceModel& model, const BosonicState& state);
BosonicState lift_state(const SubspaceModel& model, const CVector& coords);

/// Population outside the subspace, 1 - sum_i |<b_i|state>|^2 clamped at 0.
double leakage(const SubspaceModel& model, const BosonicState& state);

}  // namespace rse

#endif  // RSE_SUBSPACE_HPP
