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

#include "rse/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

namespace rse {

FockSpace::FockSpace(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("FockSpace: dim must be >= 1");
}

BosonicState::BosonicState(FockSpace space, CVector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw DomainError("BosonicState: amplitude vector has length " +
                      std::to_string(amplitudes_.size()) + ", space dim is " +
                      std::to_string(space_.dim()));
  }
}

BosonicState BosonicState::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("BosonicState: cannot normalize a zero vector");
  return BosonicState(space_, amplitudes_ / n);
}

BosonicState fock_state(const FockSpace& space, Level n) {
  if (n >= space.dim()) {
    throw DomainError("fock_state: level " + std::to_string(n) + " outside space of dim " +
                      std::to_string(space.dim()));
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  v[static_cast<Eigen::Index>(n)] = 1.0;
  return BosonicState(space, std::move(v));
}

Complex coherent_amplitude(Complex alpha, Level n) {
  const double r = std::abs(alpha);
  if (r == 0.0) return n == 0 ? Complex(1.0) : Complex(0.0);
  const double nd = static_cast<double>(n);
  const double log_mag = -0.5 * r * r + nd * std::log(r) - 0.5 * std::lgamma(nd + 1.0);
  return std::polar(std::exp(log_mag), nd * std::arg(alpha));
}

BosonicState coherent_state(const FockSpace& space, Complex alpha) {
  if (recommended_dim(alpha, 0) > space.dim()) {
    std::cerr << "warning: coherent_state(|alpha|=" << std::abs(alpha) << ") truncated at dim "
              << space.dim() << ", recommended " << recommended_dim(alpha, 0) << "\n";
  }
  const auto dim = static_cast<Eigen::Index>(space.dim());
  CVector v(dim);
  for (Eigen::Index n = 0; n < dim; ++n) v[n] = coherent_amplitude(alpha, static_cast<Level>(n));
  return BosonicState(space, std::move(v)).normalized();
}

Complex inner(const BosonicState& a, const BosonicState& b) {
  if (a.space() != b.space()) {
    throw DomainError("inner: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()) + ")");
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

double fidelity(const BosonicState& a, const BosonicState& b) {
  return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

std::size_t recommended_dim(Complex alpha, Level n_max) {
  const double r = std::abs(alpha);
  const auto by_alpha = static_cast<std::size_t>(std::ceil(r * r + 8.0 * r + 20.0));
  return std::max(n_max + 25, by_alpha);
}

}  // namespace rse
