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

#ifndef RSE_OPTIMIZER_HPP
#define RSE_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rse/common.hpp"
#include "rse/protocol.hpp"
#include "rse/subspace.hpp"

namespace rse {

enum class FinalPhaseLayer {
  kAuto,  ///< enabled for superposition targets (K > 1)
  kOn,
  kOff,
};

struct OptimizerConfig {
  std::size_t restarts = 64;
  std::size_t max_evals = 4000;  ///< objective evaluations per restart
  double tolerance = 1e-12;      ///< local search stops once 1 - F < tolerance
  std::uint64_t seed = 1;
  /// Skip the remaining restarts once this fidelity is reached.
  std::optional<double> stop_at;
  FinalPhaseLayer final_phase = FinalPhaseLayer::kAuto;
};

/// Fidelity |<target|U(params)|reference>|^2 evaluated inside the (K+1)
/// dimensional invariant subspace. Iteration j multiplies the reduced state
/// by diag(e^{-i b_j1}, ..., e^{-i b_jK}, 1) and then by I + (e^{-i c_j} - 1) v v^dagger
/// with v the reference coordinates.
double reduced_objective(const ProtocolParams& params, const SubspaceModel& model, const CVector& target_coords);

/// Analytic gradient of reduced_objective, in ProtocolParams::flatten() order.
RVector objective_gradient(const ProtocolParams& params, const SubspaceModel& model, const CVector& target_coords);

/// Reduced-space objective bound to one model and target; the form used by
/// the optimizer and exposed for callers that evaluate many parameter sets.
class ReducedObjective {
 public:
  ReducedObjective(const SubspaceModel& model, const CVector& target_coords);

  std::size_t num_targets() const { return num_targets_; }

  double value(const ProtocolParams& params) const;
  double value_and_gradient(const ProtocolParams& params, RVector& gradient) const;

 private:
  std::size_t num_targets_;
  CVector reference_;
  CVector target_;
};

struct OptimizeResult {
  ProtocolParams params;
  double fidelity = 0.0;
  std::size_t restart = 0;  ///< index of the restart that produced params
  std::size_t evaluations = 0;
};

/// Multi-start local search: quasi-Newton (BFGS) ascent with a backtracking
/// line search, falling back to a Nelder-Mead simplex when the line search
/// stalls. Restart 0 starts from the Grover angles (all pi); the rest draw
/// angles uniformly from (-pi, pi] with a generator seeded by (seed, restart).
OptimizeResult optimize(const SubspaceModel& model, const CVector& target_coords, std::size_t iterations,
                        const OptimizerConfig& config);

struct IterationScan {
  std::optional<std::size_t> iterations;  ///< smallest N meeting the threshold
  std::vector<double> best_fidelity;      ///< best fidelity for N = 1, 2, ...
  std::optional<OptimizeResult> result;   ///< optimum at the returned N
};

IterationScan minimal_iterations(const SubspaceModel& model, const CVector& target_coords, std::size_t max_iterations,
                                 double threshold, const OptimizerConfig& config);

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  ///< natural log of the prefactor
};

/// Least-squares slope of log(value) against log(n).
PowerLawFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& samples);

}  // namespace rse

#endif  // RSE_OPTIMIZER_HPP
