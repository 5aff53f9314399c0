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

#ifndef RSE_PROTOCOL_HPP
#define RSE_PROTOCOL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rse/common.hpp"
#include "rse/fockspace.hpp"
#include "rse/gates.hpp"
#include "rse/subspace.hpp"

namespace rse {

/// Angles of a discrete oracle protocol with N iterations over K Fock
/// targets. Iteration j applies the Fock oracles with phases fock_phases(j, :)
/// and then the coherent oracle with phase coherent_phases[j]. An optional
/// trailing Fock-oracle layer fixes the relative phases of the targets.
struct ProtocolParams {
  RVector coherent_phases;              ///< c_j, length N
  RMatrix fock_phases;                  ///< b_{j,k}, N x K
  std::optional<RVector> final_phases;  ///< length K

  static ProtocolParams zeros(std::size_t iterations, std::size_t targets, bool final_layer);

  std::size_t iterations() const { return static_cast<std::size_t>(coherent_phases.size()); }
  std::size_t num_targets() const { return static_cast<std::size_t>(fock_phases.cols()); }

  /// Number of free angles: N (K + 1) plus K with a final layer.
  std::size_t num_angles() const;

  /// Flat order: per iteration [b_{j,1..K}, c_j], then the final layer.
  RVector flatten() const;
  void assign(const RVector& flat);

  /// Wraps every angle to (-pi, pi].
  void wrap();

  /// Throws DomainError on inconsistent sizes or non-finite angles.
  void validate() const;
};

/// Pre-rotation e^{-i pi/2 |n><n|} aligning the reference with the resonant
/// rotation axis.
GateSequence pre_rotation_gate(Level n);

/// exp(-i H t) on reduced coordinates, from one eigendecomposition.
class ReducedPropagator {
 public:
  explicit ReducedPropagator(const ReducedHamiltonian& h);

  CVector evolve(double t, const CVector& coords) const;
  CMatrix unitary(double t) const;

 private:
  RVector energies_;
  CMatrix modes_;
};

CVector evolve_reduced(const ReducedHamiltonian& h, double t, const CVector& coords);

/// exp(-i H_full t) applied to a full-space state. The subspace component is
/// evolved in reduced coordinates and the orthogonal remainder is left
/// untouched, since H_full vanishes on it.
BosonicState evolve_full(const SubspaceModel& model, const ReducedHamiltonian& h, double t,
                         const BosonicState& state);

/// Continuous protocol bound to an initial state; cheap to sample at many t.
class ContinuousEvolver {
 public:
  ContinuousEvolver(const SubspaceModel& model, const ReducedHamiltonian& h, const BosonicState& initial);

  BosonicState state_at(double t) const;
  CVector coords_at(double t) const;

  /// |<target|state(t)>|^2, with the target given in full space.
  double fidelity_at(double t, const BosonicState& target) const;

 private:
  FockSpace space_;
  CMatrix basis_;
  ReducedPropagator propagator_;
  CVector initial_coords_;
  CVector remainder_;
};

/// Target weight giving H_11 = ratio * H_22 for a single target.
double detuned_weight(const SubspaceModel& model, double reference_weight, double ratio);

/// Full Rabi period pi / |H_12| of the resonant two-level dynamics.
double rabi_period(const ReducedHamiltonian& h);

/// Default search horizon for first-passage reporting: 5 Rabi periods.
double default_horizon(const ReducedHamiltonian& h);

/// First-order Trotterization: `steps` repetitions of the Fock-oracle layer
/// with phases omega_k t/steps followed by the coherent oracle with phase
/// Omega t/steps.
GateSequence trotter_compile(Complex alpha, const std::vector<Level>& levels, double reference_weight,
                             const std::vector<double>& target_weights, double t, std::size_t steps);

/// Compiles discrete protocol angles into displacement and SNAP primitives.
GateSequence discrete_protocol(const ProtocolParams& params, Complex alpha, const std::vector<Level>& levels);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::map<std::string, std::string> metadata;

  double peak() const;
};

std::vector<double> uniform_grid(double start, double stop, double step);

FidelityTrace fidelity_trace(const std::function<double(double)>& fidelity_at, const std::vector<double>& grid);
FidelityTrace fidelity_trace(const ContinuousEvolver& evolver, const BosonicState& target,
                             const std::vector<double>& grid);

/// Fidelity after each gate boundary of a sequence; times are gate counts
/// 0, 1, ..., size().
FidelityTrace fidelity_trace(SequenceSimulator& sim, const GateSequence& seq, const BosonicState& initial,
                             const BosonicState& target);

/// Earliest grid time with fidelity >= threshold. When `refine` is given the
/// crossing is bisected on the continuous fidelity to 1e-6 time resolution.
std::optional<double> first_passage(const FidelityTrace& trace, double threshold,
                                    const std::function<double(double)>& refine = {});

/// `t,fidelity` CSV, 17 significant digits.
std::string trace_to_csv(const FidelityTrace& trace);

}  // namespace rse

#endif  // RSE_PROTOCOL_HPP
