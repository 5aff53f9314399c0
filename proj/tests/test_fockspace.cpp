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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rse/fockspace.hpp"

using namespace rse;

TEST_CASE("fock_state basis vectors") {
  const FockSpace space(4);
  const auto v0 = fock_state(space, 0);
  const auto v3 = fock_state(space, 3);
  CHECK(v0.amplitudes() == (CVector(4) << 1, 0, 0, 0).finished());
  CHECK(v3.amplitudes() == (CVector(4) << 0, 0, 0, 1).finished());
  CHECK(v3.norm() == 1.0);
  CHECK_THROWS_AS(fock_state(space, 4), DomainError);
}

TEST_CASE("FockSpace requires at least one level") {
  CHECK_THROWS_AS(FockSpace(0), DomainError);
  CHECK(FockSpace(1).dim() == 1);
}

TEST_CASE("coherent_state vacuum limit") {
  const FockSpace space(25);
  const auto s = coherent_state(space, 0.0);
  CHECK(s.amplitudes() == fock_state(space, 0).amplitudes());
}

TEST_CASE("coherent_state at alpha = 10 matches the Poisson oracle") {
  const FockSpace space(200);
  const auto pmf = static_cast<double>(oracle::poisson_pmf(100, 100.0L));
  CHECK(pmf == doctest::Approx(oracle::kPmf100).epsilon(1e-14));
  // Raw amplitude before renormalization.
  CHECK(std::norm(coherent_amplitude(10.0, 100)) == doctest::Approx(pmf).epsilon(1e-12));
  // Raw tail beyond the truncation is negligible.
  CHECK(static_cast<double>(oracle::poisson_tail(200, 100.0L)) < 1e-12);

  const auto alpha = coherent_state(space, 10.0);
  CHECK(std::abs(alpha.norm() - 1.0) < 1e-12);
  CHECK(fidelity(alpha, fock_state(space, 100)) == doctest::Approx(0.039861).epsilon(1e-5));
  const Complex ov = inner(fock_state(space, 100), alpha);
  CHECK(ov.real() == doctest::Approx(0.199652).epsilon(1e-5));
  CHECK(std::abs(ov.imag()) < 1e-15);
}

TEST_CASE("coherent_state survives levels beyond 170 without overflow") {
  const Complex alpha = std::sqrt(380.0);
  const FockSpace space(recommended_dim(alpha, 380));
  const auto s = coherent_state(space, alpha);
  CHECK(s.amplitudes().allFinite());
  const double p = std::norm(s[380]);
  CHECK(p == doctest::Approx(static_cast<double>(oracle::poisson_pmf(380, 380.0L))).epsilon(1e-9));
}

TEST_CASE("coherent overlap agrees with the log-Gamma Poisson pmf") {
  // n <= 170 and |alpha|^2 <= 200, relative error < 1e-9.
  for (double mean : {0.5, 3.0, 17.0, 60.0, 120.0, 200.0}) {
    const Complex alpha = std::polar(std::sqrt(mean), 0.37 * mean);
    const FockSpace space(recommended_dim(alpha, 170));
    const auto s = coherent_state(space, alpha);
    for (unsigned n = 0; n <= 170; n += 1) {
      const auto expected = static_cast<double>(oracle::poisson_pmf(n, static_cast<long double>(mean)));
      if (expected < 1e-280) continue;
      const double got = std::norm(inner(fock_state(space, n), s));
      CHECK(std::abs(got - expected) <= 1e-9 * expected);
    }
  }
}

TEST_CASE("inner product properties") {
  const FockSpace space(6);
  CHECK(inner(fock_state(space, 0), fock_state(space, 0)) == Complex(1.0));
  CHECK(inner(fock_state(space, 0), fock_state(space, 1)) == Complex(0.0));
  CHECK_THROWS_AS(inner(fock_state(space, 0), fock_state(FockSpace(7), 0)), DomainError);
  CHECK_THROWS_AS(fidelity(fock_state(space, 0), fock_state(FockSpace(7), 0)), DomainError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BosonicState a(space, oracle::random_state(6, rng) * 1.7);
    const BosonicState b(space, oracle::random_state(6, rng) * 0.3);
    // conjugate symmetry, conjugate-linear in the first argument
    CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
    const BosonicState a2(space, a.amplitudes() * Complex(0.0, 2.0));
    CHECK(std::abs(inner(a2, b) - Complex(0.0, -2.0) * inner(a, b)) < 1e-13);
    // Cauchy-Schwarz
    CHECK(std::norm(inner(a, b)) <= (inner(a, a) * inner(b, b)).real() + 1e-12);
    CHECK(inner(a, a).imag() == doctest::Approx(0.0));
    CHECK(inner(a, a).real() >= 0.0);
  }
}

TEST_CASE("fidelity is clamped to [0, 1]") {
  const FockSpace space(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const BosonicState s(space, oracle::random_state(5, rng));
    CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(s, s) <= 1.0);
  }
  CHECK(fidelity(fock_state(space, 0), fock_state(space, 1)) == 0.0);
}

TEST_CASE("recommended_dim truncation rule") {
  CHECK(recommended_dim(0.0, 0) == 25);
  CHECK(recommended_dim(10.0, 100) == 200);
  CHECK(recommended_dim(std::sqrt(380.0), 380) >= 556);
  // The rule keeps the coherent tail below 1e-12.
  for (double mean : {1.0, 10.0, 88.0, 100.0, 380.0, 400.0}) {
    const auto d = recommended_dim(std::sqrt(mean), 0);
    CHECK(static_cast<double>(oracle::poisson_tail(static_cast<unsigned>(d), static_cast<long double>(mean))) < 1e-12);
  }
}

TEST_CASE("normalization invariant of constructors") {
  for (double r : {0.0, 0.5, 2.0, 7.5, 12.0}) {
    const FockSpace space(recommended_dim(r, 0));
    CHECK(std::abs(coherent_state(space, std::polar(r, 1.1)).norm() - 1.0) < 1e-9);
  }
  const FockSpace space(3);
  CHECK_THROWS_AS(BosonicState(space, CVector::Zero(3)).normalized(), DomainError);
  CHECK_THROWS_AS(BosonicState(space, CVector::Zero(4)), DomainError);
}
