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

#include "rse/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace rse {

ProtocolParams ProtocolParams::zeros(std::size_t iterations, std::size_t targets, bool final_layer) {
  ProtocolParams p;
  p.coherent_phases = RVector::Zero(static_cast<Eigen::Index>(iterations));
  p.fock_phases = RMatrix::Zero(static_cast<Eigen::Index>(iterations), static_cast<Eigen::Index>(targets));
  if (final_layer) p.final_phases = RVector::Zero(static_cast<Eigen::Index>(targets));
  return p;
}

std::size_t ProtocolParams::num_angles() const {
  return iterations() * (num_targets() + 1) + (final_phases ? num_targets() : 0);
}

RVector ProtocolParams::flatten() const {
  RVector flat(static_cast<Eigen::Index>(num_angles()));
  Eigen::Index i = 0;
  for (Eigen::Index j = 0; j < coherent_phases.size(); ++j) {
    for (Eigen::Index k = 0; k < fock_phases.cols(); ++k) flat[i++] = fock_phases(j, k);
    flat[i++] = coherent_phases[j];
  }
  if (final_phases) {
    for (Eigen::Index k = 0; k < final_phases->size(); ++k) flat[i++] = (*final_phases)[k];
  }
  return flat;
}

void ProtocolParams::assign(const RVector& flat) {
  if (static_cast<std::size_t>(flat.size()) != num_angles()) {
    throw DomainError("ProtocolParams::assign: expected " + std::to_string(num_angles()) + " angles");
  }
  Eigen::Index i = 0;
  for (Eigen::Index j = 0; j < coherent_phases.size(); ++j) {
    for (Eigen::Index k = 0; k < fock_phases.cols(); ++k) fock_phases(j, k) = flat[i++];
    coherent_phases[j] = flat[i++];
  }
  if (final_phases) {
    for (Eigen::Index k = 0; k < final_phases->size(); ++k) (*final_phases)[k] = flat[i++];
  }
}

void ProtocolParams::wrap() {
  coherent_phases = coherent_phases.unaryExpr(&wrap_phase);
  fock_phases = fock_phases.unaryExpr(&wrap_phase);
  if (final_phases) *final_phases = final_phases->unaryExpr(&wrap_phase);
}

void ProtocolParams::validate() const {
  if (fock_phases.rows() != coherent_phases.size()) {
    throw DomainError("ProtocolParams: fock_phases has " + std::to_string(fock_phases.rows()) +
                      " rows, expected N = " + std::to_string(coherent_phases.size()));
  }
  if (final_phases && final_phases->size() != fock_phases.cols()) {
    throw DomainError("ProtocolParams: final_phases length does not match K");
  }
  if (!flatten().allFinite()) throw DomainError("ProtocolParams: non-finite angle");
}

GateSequence pre_rotation_gate(Level n) { return fock_goo(n, kPi / 2.0); }

ReducedPropagator::ReducedPropagator(const ReducedHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix);
  if (es.info() != Eigen::Success) throw DomainError("ReducedPropagator: eigendecomposition failed");
  energies_ = es.eigenvalues();
  modes_ = es.eigenvectors();
}

CVector ReducedPropagator::evolve(double t, const CVector& coords) const {
  if (coords.size() != modes_.rows()) throw DomainError("ReducedPropagator::evolve: coordinate size mismatch");
  CVector c = modes_.adjoint() * coords;
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -energies_[i] * t);
  return modes_ * c;
}

CMatrix ReducedPropagator::unitary(double t) const {
  CVector phases(energies_.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -energies_[i] * t);
  return modes_ * phases.asDiagonal() * modes_.adjoint();
}

CVector evolve_reduced(const ReducedHamiltonian& h, double t, const CVector& coords) {
  return ReducedPropagator(h).evolve(t, coords);
}

ContinuousEvolver::ContinuousEvolver(const SubspaceModel& model, const ReducedHamiltonian& h,
                                     const BosonicState& initial)
    : space_(model.space()), basis_(model.basis_matrix()), propagator_(h) {
  if (initial.space() != space_) throw DomainError("ContinuousEvolver: dimension mismatch");
  if (static_cast<std::size_t>(h.matrix.rows()) != model.reduced_dim()) {
    throw DomainError("ContinuousEvolver: Hamiltonian does not match the subspace dimension");
  }
  initial_coords_ = basis_.adjoint() * initial.amplitudes();
  remainder_ = initial.amplitudes() - basis_ * initial_coords_;
}

CVector ContinuousEvolver::coords_at(double t) const { return propagator_.evolve(t, initial_coords_); }

BosonicState ContinuousEvolver::state_at(double t) const {
  return BosonicState(space_, basis_ * coords_at(t) + remainder_);
}

double ContinuousEvolver::fidelity_at(double t, const BosonicState& target) const {
  if (target.space() != space_) throw DomainError("ContinuousEvolver::fidelity_at: dimension mismatch");
  const CVector tc = basis_.adjoint() * target.amplitudes();
  const Complex overlap = tc.dot(coords_at(t)) + target.amplitudes().dot(remainder_);
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

BosonicState evolve_full(const SubspaceModel& model, const ReducedHamiltonian& h, double t,
                         const BosonicState& state) {
  return ContinuousEvolver(model, h, state).state_at(t);
}

double detuned_weight(const SubspaceModel& model, double reference_weight, double ratio) {
  if (model.num_targets() != 1) throw UnsupportedError("detuned_weight: single target only");
  const double p = std::norm(model.overlaps()[0]);
  return reference_weight * (ratio * (1.0 - p) - p);
}

double rabi_period(const ReducedHamiltonian& h) {
  const double coupling = std::abs(h.element(0, 1));
  if (coupling == 0.0) throw PreconditionError("rabi_period: zero coupling");
  return kPi / coupling;
}

double default_horizon(const ReducedHamiltonian& h) { return 5.0 * rabi_period(h); }

GateSequence trotter_compile(Complex alpha, const std::vector<Level>& levels, double reference_weight,
                             const std::vector<double>& target_weights, double t, std::size_t steps) {
  if (steps == 0) throw DomainError("trotter_compile: steps must be >= 1");
  if (levels.size() != target_weights.size()) throw DomainError("trotter_compile: level/weight count mismatch");
  const double dt = t / static_cast<double>(steps);
  PhaseMap layer;
  for (std::size_t k = 0; k < levels.size(); ++k) layer.emplace_back(levels[k], target_weights[k] * dt);
  const GateSequence fock = multi_fock_goo(layer);
  const GateSequence coherent = coherent_goo(alpha, reference_weight * dt);
  GateSequence seq;
  seq.gates.reserve(steps * (fock.size() + coherent.size()));
  for (std::size_t s = 0; s < steps; ++s) {
    seq.append(fock);
    seq.append(coherent);
  }
  return seq;
}

GateSequence discrete_protocol(const ProtocolParams& params, Complex alpha, const std::vector<Level>& levels) {
  params.validate();
  if (levels.size() != params.num_targets()) {
    throw DomainError("discrete_protocol: " + std::to_string(levels.size()) + " levels for " +
                      std::to_string(params.num_targets()) + " target phases");
  }
  GateSequence seq;
  for (std::size_t j = 0; j < params.iterations(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    PhaseMap layer;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      layer.emplace_back(levels[k], params.fock_phases(jj, static_cast<Eigen::Index>(k)));
    }
    seq.append(multi_fock_goo(layer));
    seq.append(coherent_goo(alpha, params.coherent_phases[jj]));
  }
  if (params.final_phases) {
    PhaseMap layer;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      layer.emplace_back(levels[k], (*params.final_phases)[static_cast<Eigen::Index>(k)]);
    }
    seq.append(multi_fock_goo(layer));
  }
  return seq;
}

double FidelityTrace::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::vector<double> uniform_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw DomainError("uniform_grid: need step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  return grid;
}

FidelityTrace fidelity_trace(const std::function<double(double)>& fidelity_at, const std::vector<double>& grid) {
  FidelityTrace trace;
  trace.times = grid;
  trace.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("fidelity_trace: grid must be strictly increasing");
    trace.values.push_back(std::clamp(fidelity_at(grid[i]), 0.0, 1.0));
  }
  return trace;
}

FidelityTrace fidelity_trace(const ContinuousEvolver& evolver, const BosonicState& target,
                             const std::vector<double>& grid) {
  return fidelity_trace([&](double t) { return evolver.fidelity_at(t, target); }, grid);
}

FidelityTrace fidelity_trace(SequenceSimulator& sim, const GateSequence& seq, const BosonicState& initial,
                             const BosonicState& target) {
  FidelityTrace trace;
  const auto states = sim.run_trajectory(seq, initial);
  for (std::size_t i = 0; i < states.size(); ++i) {
    trace.times.push_back(static_cast<double>(i));
    trace.values.push_back(fidelity(states[i], target));
  }
  return trace;
}

std::optional<double> first_passage(const FidelityTrace& trace, double threshold,
                                    const std::function<double(double)>& refine) {
  constexpr double kResolution = 1e-6;
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    if (trace.values[i] < threshold) continue;
    if (i == 0 || !refine) return trace.times[i];
    double lo = trace.times[i - 1];
    double hi = trace.times[i];
    while (hi - lo > kResolution) {
      const double mid = 0.5 * (lo + hi);
      if (refine(mid) >= threshold) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }
  return std::nullopt;
}

std::string trace_to_csv(const FidelityTrace& trace) {
  std::string out = "t,fidelity\n";
  char buf[80];
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", trace.times[i], trace.values[i]);
    out += buf;
  }
  return out;
}

}  // namespace rse
