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

#ifndef RSE_GATES_HPP
#define RSE_GATES_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rse/common.hpp"
#include "rse/fockspace.hpp"

namespace rse {

/// Dense operator on a truncated Fock space. Expected to be unitary; use
/// unitarity_error() to check.
class UnitaryOperator {
 public:
  UnitaryOperator(FockSpace space, CMatrix matrix);

  static UnitaryOperator identity(const FockSpace& space);

  const FockSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }

  double unitarity_error() const;

  BosonicState apply(const BosonicState& state) const;

  /// this * other (other acts first).
  UnitaryOperator operator*(const UnitaryOperator& other) const;

 private:
  FockSpace space_;
  CMatrix matrix_;
};

using PhaseMap = std::vector<std::pair<Level, double>>;

struct Displacement {
  Complex amplitude;
  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Selective number-dependent arbitrary phase: sum_n e^{i theta_n} |n><n|,
/// identity on levels not listed. Levels are kept sorted and distinct,
/// phases wrapped to (-pi, pi].
class Snap {
 public:
  Snap() = default;
  explicit Snap(PhaseMap phases);

  const PhaseMap& phases() const { return phases_; }
  bool empty() const { return phases_.empty(); }
  Level max_level() const;

  friend bool operator==(const Snap&, const Snap&) = default;

 private:
  PhaseMap phases_;
};

/// Diagonal product; phases on shared levels add modulo 2 pi.
Snap compose(const Snap& first, const Snap& second);

using Gate = std::variant<Displacement, Snap>;

/// Primitive gates applied left to right: gates[0] acts first.
struct GateSequence {
  std::vector<Gate> gates;

  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }
  void append(const GateSequence& other);
  friend bool operator==(const GateSequence&, const GateSequence&) = default;
};

/// exp(alpha a^dagger - conj(alpha) a) of the truncated generator. Exactly
/// unitary on the truncated space; boundary effects are confined to levels
/// near dim - 1.
UnitaryOperator displacement(const FockSpace& space, Complex alpha);

UnitaryOperator snap(const FockSpace& space, const PhaseMap& phases);
UnitaryOperator snap(const FockSpace& space, const Snap& gate);

/// Generalized oracle e^{-i phi |psi><psi|} = I + (e^{-i phi} - 1)|psi><psi|.
UnitaryOperator rank1_phase(const BosonicState& psi, double phi);

/// Oracle on |n>: one SNAP with theta_n = -phi.
GateSequence fock_goo(Level n, double phi);

/// Oracle on the coherent state |alpha>: D(-alpha), SNAP on |0>, D(alpha).
GateSequence coherent_goo(Complex alpha, double phi);

/// Product of commuting Fock oracles realized as a single SNAP.
GateSequence multi_fock_goo(const PhaseMap& level_phases);

UnitaryOperator gate_unitary(const Gate& gate, const FockSpace& space);
UnitaryOperator sequence_unitary(const GateSequence& seq, const FockSpace& space);

/// Largest level index a sequence addresses through SNAPs (0 if none).
Level max_snap_level(const GateSequence& seq);

/// Applies gate sequences to states on a fixed space. Displacement matrices
/// are computed once per amplitude and reused.
class SequenceSimulator {
 public:
  explicit SequenceSimulator(FockSpace space) : space_(space) {}

  const FockSpace& space() const { return space_; }

  void apply_in_place(const Gate& gate, CVector& amplitudes);
  BosonicState run(const GateSequence& seq, const BosonicState& initial);

  /// State after each prefix of the sequence; element 0 is the initial state.
  std::vector<BosonicState> run_trajectory(const GateSequence& seq, const BosonicState& initial);

  const CMatrix& displacement_matrix(Complex alpha);

 private:
  FockSpace space_;
  std::map<std::pair<double, double>, CMatrix> displacement_cache_;
};

/// One gate per line: `D <re> <im>` or `SNAP n1:phase1,n2:phase2,...`,
/// numbers written with 17 significant digits.
std::string to_text(const GateSequence& seq);

/// Inverse of to_text. Blank lines and lines starting with '#' are skipped.
/// Throws DomainError on malformed input.
GateSequence parse_gate_sequence(const std::string& text);

}  // namespace rse

#endif  // RSE_GATES_HPP
