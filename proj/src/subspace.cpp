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

#include "rse/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rse {
namespace {

constexpr double kOrthonormalTolerance = 1e-8;
constexpr double kOverlapFloor = 1e-8;
constexpr double kDegenerateMargin = 1e-10;
constexpr double kResonanceTolerance = 1e-9;

void require_single_target(const SubspaceModel& model, const char* where) {
  if (model.num_targets() != 1) {
    throw UnsupportedError(std::string(where) + ": defined for a single target only (K = " +
                           std::to_string(model.num_targets()) + ")");
  }
}

}  // namespace

SubspaceModel::SubspaceModel(std::vector<BosonicState> targets, BosonicState reference, CVector overlaps,
                             double complement_weight, BosonicState complement, CMatrix basis_matrix)
    : targets_(std::move(targets)),
      reference_(std::move(reference)),
      overlaps_(std::move(overlaps)),
      complement_weight_(complement_weight),
      complement_(std::move(complement)),
      basis_matrix_(std::move(basis_matrix)) {}

std::optional<double> SubspaceModel::theta() const {
  if (targets_.size() != 1) return std::nullopt;
  return std::arg(overlaps_[0]);
}

const BosonicState& SubspaceModel::basis(std::size_t i) const {
  if (i < targets_.size()) return targets_[i];
  if (i == targets_.size()) return complement_;
  throw DomainError("SubspaceModel::basis: index " + std::to_string(i) + " out of range");
}

CVector SubspaceModel::reference_coords() const {
  const auto k = static_cast<Eigen::Index>(targets_.size());
  CVector v(k + 1);
  v.head(k) = overlaps_;
  v[k] = complement_weight_;
  return v;
}

SubspaceModel build_subspace(std::vector<BosonicState> targets, BosonicState reference) {
  if (targets.empty()) throw DomainError("build_subspace: at least one target is required");
  if (std::abs(reference.norm() - 1.0) > 1e-9) throw DomainError("build_subspace: reference is not normalized");
  const FockSpace space = reference.space();
  const auto k = static_cast<Eigen::Index>(targets.size());
  const auto dim = static_cast<Eigen::Index>(space.dim());

  for (const auto& t : targets) {
    if (t.space() != space) throw DomainError("build_subspace: target and reference dimensions differ");
  }
  CMatrix basis(dim, k + 1);
  for (Eigen::Index i = 0; i < k; ++i) basis.col(i) = targets[static_cast<std::size_t>(i)].amplitudes();
  const CMatrix gram = basis.leftCols(k).adjoint() * basis.leftCols(k);
  const double ortho_err = (gram - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (ortho_err > kOrthonormalTolerance) {
    throw DomainError("build_subspace: targets are not orthonormal (Gram deviation " +
                      std::to_string(ortho_err) + ")");
  }

  CVector mu = basis.leftCols(k).adjoint() * reference.amplitudes();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(mu[i]) <= kOverlapFloor) {
      throw UnreachableTargetError("build_subspace: target " + std::to_string(i) +
                                   " has vanishing overlap with the reference");
    }
  }
  const double captured = mu.squaredNorm();
  if (captured >= 1.0 - kDegenerateMargin) {
    throw DegenerateSubspaceError("build_subspace: reference lies inside the target span");
  }
  const double weight = std::sqrt(1.0 - captured);
  CVector perp = (reference.amplitudes() - basis.leftCols(k) * mu) / weight;
  basis.col(k) = perp;
  BosonicState complement(space, std::move(perp));
  return SubspaceModel(std::move(targets), std::move(reference), std::move(mu), weight, std::move(complement),
                       std::move(basis));
}

ReducedHamiltonian reduced_hamiltonian(const SubspaceModel& model, double reference_weight,
                                       const std::vector<double>& target_weights) {
  if (target_weights.size() != model.num_targets()) {
    throw DomainError("reduced_hamiltonian: expected " + std::to_string(model.num_targets()) +
                      " target weights, got " + std::to_string(target_weights.size()));
  }
  const CVector v = model.reference_coords();
  CMatrix h = reference_weight * v * v.adjoint();
  for (std::size_t j = 0; j < target_weights.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    h(jj, jj) += target_weights[j];
  }
  // Exact Hermitian symmetrization of the outer product's rounding.
  h = 0.5 * (h + h.adjoint()).eval();
  return ReducedHamiltonian{std::move(h), reference_weight, target_weights};
}

CMatrix full_hamiltonian(const SubspaceModel& model, double reference_weight,
                         const std::vector<double>& target_weights) {
  if (target_weights.size() != model.num_targets()) throw DomainError("full_hamiltonian: weight count mismatch");
  const CVector& r = model.reference().amplitudes();
  CMatrix h = reference_weight * r * r.adjoint();
  for (std::size_t j = 0; j < target_weights.size(); ++j) {
    const CVector& t = model.targets()[j].amplitudes();
    h += target_weights[j] * t * t.adjoint();
  }
  return h;
}

double resonance_weight(const SubspaceModel& model, double reference_weight) {
  require_single_target(model, "resonance_weight");
  return reference_weight * (1.0 - 2.0 * std::norm(model.overlaps()[0]));
}

double phase_matching_mismatch(const SubspaceModel& model, const ReducedHamiltonian& h) {
  require_single_target(model, "phase_matching_mismatch");
  const Complex h12 = h.element(0, 1);
  if (h12 == Complex(0.0)) throw PreconditionError("phase_matching_mismatch: H_12 = 0, coupling phase undefined");
  return wrap_phase(std::arg(h12) - *model.theta() - kPi / 2.0);
}

TransferTime transfer_time(const SubspaceModel& model, const ReducedHamiltonian& h) {
  require_single_target(model, "transfer_time");
  const double coupling = std::abs(h.element(0, 1));
  const double detuning = std::abs(h.element(0, 0) - h.element(1, 1));
  if (!(detuning < kResonanceTolerance * coupling)) {
    throw PreconditionError("transfer_time: resonance violated (|H11 - H22| = " + std::to_string(detuning) +
                            ", |H12| = " + std::to_string(coupling) + ")");
  }
  const double mu = std::abs(model.overlaps()[0]);
  return TransferTime{std::acos(std::min(mu, 1.0)) / coupling, kPi / (2.0 * std::abs(h.reference_weight) * mu)};
}

CVector project_state(const SubspaceModel& model, const BosonicState& state) {
  if (state.space() != model.space()) throw DomainError("project_state: dimension mismatch");
  return model.basis_matrix().adjoint() * state.amplitudes();
}

BosonicState lift_state(const SubspaceModel& model, const CVector& coords) {
  if (static_cast<std::size_t>(coords.size()) != model.reduced_dim()) {
    throw DomainError("lift_state: expected " + std::to_string(model.reduced_dim()) + " coordinates");
  }
  return BosonicState(model.space(), model.basis_matrix() * coords);
}

double leakage(const SubspaceModel& model, const BosonicState& state) {
  const CVector c = project_state(model, state);
  // Residual form avoids the cancellation in 1 - sum |c_i|^2.
  return (state.amplitudes() - model.basis_matrix() * c).squaredNorm();
}

}  // namespace rse
