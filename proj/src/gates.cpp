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

#include "rse/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rse/linalg.hpp"

namespace rse {
namespace {

constexpr double kNormTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_level(Level n, const FockSpace& space, const char* where) {
  if (n >= space.dim()) {
    throw DomainError(std::string(where) + ": level " + std::to_string(n) +
                      " outside space of dim " + std::to_string(space.dim()));
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

double parse_double(const std::string& token, int line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw DomainError("gate program line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return value;
}

}  // namespace

UnitaryOperator::UnitaryOperator(FockSpace space, CMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DomainError("UnitaryOperator: matrix shape does not match space dim " + std::to_string(d));
  }
}

UnitaryOperator UnitaryOperator::identity(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return UnitaryOperator(space, CMatrix::Identity(d, d));
}

double UnitaryOperator::unitarity_error() const { return linalg::unitarity_error(matrix_); }

BosonicState UnitaryOperator::apply(const BosonicState& state) const {
  if (state.space() != space_) throw DomainError("UnitaryOperator::apply: dimension mismatch");
  return BosonicState(space_, matrix_ * state.amplitudes());
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& other) const {
  if (other.space_ != space_) throw DomainError("UnitaryOperator product: dimension mismatch");
  return UnitaryOperator(space_, matrix_ * other.matrix_);
}

Snap::Snap(PhaseMap phases) : phases_(std::move(phases)) {
  std::sort(phases_.begin(), phases_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (!std::isfinite(phases_[i].second)) throw DomainError("Snap: non-finite phase");
    if (i > 0 && phases_[i].first == phases_[i - 1].first) {
      throw DomainError("Snap: duplicate level " + std::to_string(phases_[i].first));
    }
    phases_[i].second = wrap_phase(phases_[i].second);
  }
}

Level Snap::max_level() const { return phases_.empty() ? 0 : phases_.back().first; }

Snap compose(const Snap& first, const Snap& second) {
  std::map<Level, double> sum;
  for (const auto& [n, th] : first.phases()) sum[n] += th;
  for (const auto& [n, th] : second.phases()) sum[n] += th;
  return Snap(PhaseMap(sum.begin(), sum.end()));
}

void GateSequence::append(const GateSequence& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

UnitaryOperator displacement(const FockSpace& space, Complex alpha) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (alpha == Complex(0.0)) return UnitaryOperator::identity(space);
  CMatrix gen = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    gen(n, n - 1) = alpha * s;             // alpha a^dagger
    gen(n - 1, n) = -std::conj(alpha) * s;  // -conj(alpha) a
  }
  return UnitaryOperator(space, linalg::expm(gen));
}

UnitaryOperator snap(const FockSpace& space, const Snap& gate) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  CVector diag = CVector::Ones(d);
  for (const auto& [n, th] : gate.phases()) {
    check_level(n, space, "snap");
    diag[static_cast<Eigen::Index>(n)] = std::polar(1.0, th);
  }
  return UnitaryOperator(space, diag.asDiagonal().toDenseMatrix());
}

UnitaryOperator snap(const FockSpace& space, const PhaseMap& phases) { return snap(space, Snap(phases)); }

UnitaryOperator rank1_phase(const BosonicState& psi, double phi) {
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw DomainError("rank1_phase: state is not normalized (norm " + std::to_string(psi.norm()) + ")");
  }
  const auto d = static_cast<Eigen::Index>(psi.dim());
  const CVector& v = psi.amplitudes();
  CMatrix m = CMatrix::Identity(d, d);
  m.noalias() += (std::polar(1.0, -phi) - 1.0) * v * v.adjoint();
  return UnitaryOperator(psi.space(), std::move(m));
}

GateSequence fock_goo(Level n, double phi) {
  if (wrap_phase(phi) == 0.0) return GateSequence{{Snap()}};
  return GateSequence{{Snap({{n, -phi}})}};
}

GateSequence coherent_goo(Complex alpha, double phi) {
  Snap s = wrap_phase(phi) == 0.0 ? Snap() : Snap({{0, -phi}});
  return GateSequence{{Displacement{-alpha}, std::move(s), Displacement{alpha}}};
}

GateSequence multi_fock_goo(const PhaseMap& level_phases) {
  PhaseMap negated;
  negated.reserve(level_phases.size());
  std::vector<Level> seen;
  for (const auto& [n, phi] : level_phases) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) {
      throw DomainError("multi_fock_goo: duplicate level " + std::to_string(n));
    }
    seen.push_back(n);
    if (wrap_phase(phi) != 0.0) negated.emplace_back(n, -phi);
  }
  return GateSequence{{Snap(std::move(negated))}};
}

UnitaryOperator gate_unitary(const Gate& gate, const FockSpace& space) {
  return std::visit(overloaded{[&](const Displacement& g) { return displacement(space, g.amplitude); },
                               [&](const Snap& g) { return snap(space, g); }},
                    gate);
}

UnitaryOperator sequence_unitary(const GateSequence& seq, const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  SequenceSimulator sim(space);
  CMatrix u = CMatrix::Identity(d, d);
  for (const Gate& g : seq.gates) {
    std::visit(overloaded{[&](const Displacement& disp) { u = sim.displacement_matrix(disp.amplitude) * u; },
                          [&](const Snap& s) {
                            for (const auto& [n, th] : s.phases()) {
                              check_level(n, space, "sequence_unitary");
                              u.row(static_cast<Eigen::Index>(n)) *= std::polar(1.0, th);
                            }
                          }},
               g);
  }
  return UnitaryOperator(space, std::move(u));
}

Level max_snap_level(const GateSequence& seq) {
  Level m = 0;
  for (const Gate& g : seq.gates) {
    if (const auto* s = std::get_if<Snap>(&g)) m = std::max(m, s->max_level());
  }
  return m;
}

const CMatrix& SequenceSimulator::displacement_matrix(Complex alpha) {
  const auto key = std::make_pair(alpha.real(), alpha.imag());
  auto it = displacement_cache_.find(key);
  if (it == displacement_cache_.end()) {
    it = displacement_cache_.emplace(key, displacement(space_, alpha).matrix()).first;
  }
  return it->second;
}

void SequenceSimulator::apply_in_place(const Gate& gate, CVector& amplitudes) {
  std::visit(overloaded{[&](const Displacement& disp) {
                          if (disp.amplitude == Complex(0.0)) return;
                          amplitudes = displacement_matrix(disp.amplitude) * amplitudes;
                        },
                        [&](const Snap& s) {
                          for (const auto& [n, th] : s.phases()) {
                            check_level(n, space_, "SequenceSimulator");
                            amplitudes[static_cast<Eigen::Index>(n)] *= std::polar(1.0, th);
                          }
                        }},
             gate);
}

BosonicState SequenceSimulator::run(const GateSequence& seq, const BosonicState& initial) {
  if (initial.space() != space_) throw DomainError("SequenceSimulator::run: dimension mismatch");
  CVector v = initial.amplitudes();
  for (const Gate& g : seq.gates) apply_in_place(g, v);
  return BosonicState(space_, std::move(v));
}

std::vector<BosonicState> SequenceSimulator::run_trajectory(const GateSequence& seq,
                                                            const BosonicState& initial) {
  if (initial.space() != space_) throw DomainError("SequenceSimulator::run_trajectory: dimension mismatch");
  std::vector<BosonicState> out;
  out.reserve(seq.size() + 1);
  out.push_back(initial);
  CVector v = initial.amplitudes();
  for (const Gate& g : seq.gates) {
    apply_in_place(g, v);
    out.emplace_back(space_, v);
  }
  return out;
}

std::string to_text(const GateSequence& seq) {
  std::string out;
  for (const Gate& g : seq.gates) {
    std::visit(overloaded{[&](const Displacement& d) {
                            out += "D " + format_double(d.amplitude.real()) + " " +
                                   format_double(d.amplitude.imag());
                          },
                          [&](const Snap& s) {
                            out += "SNAP";
                            for (std::size_t i = 0; i < s.phases().size(); ++i) {
                              out += i == 0 ? " " : ",";
                              out += std::to_string(s.phases()[i].first) + ":" +
                                     format_double(s.phases()[i].second);
                            }
                          }},
               g);
    out += '\n';
  }
  return out;
}

GateSequence parse_gate_sequence(const std::string& text) {
  GateSequence seq;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op.front() == '#') continue;
    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);
    if (op == "D") {
      if (rest.size() != 2) {
        throw DomainError("gate program line " + std::to_string(line_no) + ": D expects <re> <im>");
      }
      seq.gates.emplace_back(Displacement{{parse_double(rest[0], line_no), parse_double(rest[1], line_no)}});
    } else if (op == "SNAP") {
      if (rest.size() > 1) {
        throw DomainError("gate program line " + std::to_string(line_no) + ": SNAP expects one list");
      }
      PhaseMap phases;
      if (!rest.empty()) {
        std::istringstream items(rest[0]);
        for (std::string item; std::getline(items, item, ',');) {
          const auto colon = item.find(':');
          if (colon == std::string::npos || colon == 0) {
            throw DomainError("gate program line " + std::to_string(line_no) + ": bad SNAP entry '" + item + "'");
          }
          const std::string lvl = item.substr(0, colon);
          if (lvl.find_first_not_of("0123456789") != std::string::npos) {
            throw DomainError("gate program line " + std::to_string(line_no) + ": bad level '" + lvl + "'");
          }
          phases.emplace_back(static_cast<Level>(std::stoull(lvl)), parse_double(item.substr(colon + 1), line_no));
        }
      }
      seq.gates.emplace_back(Snap(std::move(phases)));
    } else {
      throw DomainError("gate program line " + std::to_string(line_no) + ": unknown gate '" + op + "'");
    }
  }
  return seq;
}

}  // namespace rse
