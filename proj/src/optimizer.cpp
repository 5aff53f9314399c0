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

#include "rse/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rse/nelder_mead.hpp"

namespace rse {
namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 50;
constexpr double kGradientFloor = 1e-10;

bool uses_final_layer(const OptimizerConfig& config, std::size_t num_targets) {
  switch (config.final_phase) {
    case FinalPhaseLayer::kOn:
      return true;
    case FinalPhaseLayer::kOff:
      return false;
    case FinalPhaseLayer::kAuto:
      break;
  }
  return num_targets > 1;
}

struct LocalResult {
  RVector x;
  double fidelity;
  std::size_t evaluations;
};

// Maximizes the fidelity from x0 with BFGS on -F; hands over to the simplex
// method when the line search can no longer make progress.
LocalResult local_search(const ReducedObjective& objective, ProtocolParams shape, RVector x,
                         const OptimizerConfig& config) {
  std::size_t evals = 0;
  RVector grad;
  auto value_grad = [&](const RVector& at, RVector& g) {
    ++evals;
    shape.assign(at);
    const double f = objective.value_and_gradient(shape, g);
    g = -g;
    return -f;
  };
  auto value_only = [&](const RVector& at) {
    ++evals;
    shape.assign(at);
    return -objective.value(shape);
  };

  const Eigen::Index n = x.size();
  double fx = value_grad(x, grad);
  RMatrix inv_hessian = RMatrix::Identity(n, n);
  bool stalled = false;

  while (evals < config.max_evals) {
    if (1.0 + fx < config.tolerance) break;
    if (grad.lpNorm<Eigen::Infinity>() < kGradientFloor) break;
    RVector dir = -inv_hessian * grad;
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      inv_hessian.setIdentity();
      dir = -grad;
      slope = grad.dot(dir);
    }
    double step = 1.0;
    RVector trial;
    double ft = 0.0;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings && evals < config.max_evals; ++h) {
      trial = (x + step * dir).unaryExpr(&wrap_phase);
      ft = value_only(trial);
      if (ft <= fx + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    RVector new_grad;
    const double fnew = value_grad(trial, new_grad);
    const RVector s = step * dir;  // unwrapped displacement
    const RVector y = new_grad - grad;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const RVector hy = inv_hessian * y;
      const double yhy = y.dot(hy);
      inv_hessian += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) - (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    const bool no_progress = fx - fnew < 1e-16;
    x = trial;
    fx = fnew;
    grad = new_grad;
    if (no_progress) {
      stalled = true;
      break;
    }
  }

  if (stalled && grad.lpNorm<Eigen::Infinity>() > 1e-6 && evals < config.max_evals) {
    const SimplexResult nm = nelder_mead(value_only, x, 0.1, config.max_evals - evals, 1e-15);
    if (nm.value < fx) {
      x = nm.x.unaryExpr(&wrap_phase);
      fx = nm.value;
    }
  }
  return LocalResult{x, -fx, evals};
}

}  // namespace

ReducedObjective::ReducedObjective(const SubspaceModel& model, const CVector& target_coords)
    : num_targets_(model.num_targets()), reference_(model.reference_coords()), target_(target_coords) {
  if (static_cast<std::size_t>(target_coords.size()) != model.reduced_dim()) {
    throw DomainError("ReducedObjective: target has " + std::to_string(target_coords.size()) +
                      " coordinates, subspace dimension is " + std::to_string(model.reduced_dim()));
  }
  if (std::abs(target_coords.norm() - 1.0) > 1e-9) throw DomainError("ReducedObjective: target is not normalized");
}

double ReducedObjective::value(const ProtocolParams& params) const {
  params.validate();
  if (params.num_targets() != num_targets_) throw DomainError("reduced_objective: params sized for a different K");
  const auto k = static_cast<Eigen::Index>(num_targets_);
  CVector r = reference_;
  for (Eigen::Index j = 0; j < params.coherent_phases.size(); ++j) {
    for (Eigen::Index i = 0; i < k; ++i) r[i] *= std::polar(1.0, -params.fock_phases(j, i));
    r += (std::polar(1.0, -params.coherent_phases[j]) - 1.0) * reference_.dot(r) * reference_;
  }
  if (params.final_phases) {
    for (Eigen::Index i = 0; i < k; ++i) r[i] *= std::polar(1.0, -(*params.final_phases)[i]);
  }
  return std::clamp(std::norm(target_.dot(r)), 0.0, 1.0);
}

double ReducedObjective::value_and_gradient(const ProtocolParams& params, RVector& gradient) const {
  params.validate();
  if (params.num_targets() != num_targets_) throw DomainError("objective_gradient: params sized for a different K");
  const auto k = static_cast<Eigen::Index>(num_targets_);
  const Eigen::Index iters = params.coherent_phases.size();
  const Complex minus_i(0.0, -1.0);

  // Forward pass: state entering each Fock layer and each coherent oracle.
  std::vector<CVector> before_fock(static_cast<std::size_t>(iters));
  std::vector<CVector> before_coherent(static_cast<std::size_t>(iters));
  CVector r = reference_;
  for (Eigen::Index j = 0; j < iters; ++j) {
    before_fock[static_cast<std::size_t>(j)] = r;
    for (Eigen::Index i = 0; i < k; ++i) r[i] *= std::polar(1.0, -params.fock_phases(j, i));
    before_coherent[static_cast<std::size_t>(j)] = r;
    r += (std::polar(1.0, -params.coherent_phases[j]) - 1.0) * reference_.dot(r) * reference_;
  }
  const CVector before_final = r;
  if (params.final_phases) {
    for (Eigen::Index i = 0; i < k; ++i) r[i] *= std::polar(1.0, -(*params.final_phases)[i]);
  }
  const Complex amp = target_.dot(r);

  // Backward pass: l is U_after^dagger target for the factor being differentiated.
  gradient.resize(static_cast<Eigen::Index>(params.num_angles()));
  auto d_fid = [&](Complex d_amp) { return 2.0 * (std::conj(amp) * d_amp).real(); };
  CVector l = target_;
  Eigen::Index offset = gradient.size();
  if (params.final_phases) {
    offset -= k;
    for (Eigen::Index i = 0; i < k; ++i) {
      const Complex e = std::polar(1.0, -(*params.final_phases)[i]);
      gradient[offset + i] = d_fid(minus_i * e * std::conj(l[i]) * before_final[i]);
      l[i] *= std::conj(e);
    }
  }
  for (Eigen::Index j = iters - 1; j >= 0; --j) {
    offset -= k + 1;
    const CVector& rc = before_coherent[static_cast<std::size_t>(j)];
    const Complex ec = std::polar(1.0, -params.coherent_phases[j]);
    const Complex lv = l.dot(reference_);  // l^dagger v
    gradient[offset + k] = d_fid(minus_i * ec * lv * reference_.dot(rc));
    l += (std::conj(ec) - 1.0) * reference_.dot(l) * reference_;
    const CVector& rf = before_fock[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < k; ++i) {
      const Complex e = std::polar(1.0, -params.fock_phases(j, i));
      gradient[offset + i] = d_fid(minus_i * e * std::conj(l[i]) * rf[i]);
      l[i] *= std::conj(e);
    }
  }
  return std::clamp(std::norm(amp), 0.0, 1.0);
}

double reduced_objective(const ProtocolParams& params, const SubspaceModel& model, const CVector& target_coords) {
  return ReducedObjective(model, target_coords).value(params);
}

RVector objective_gradient(const ProtocolParams& params, const SubspaceModel& model, const CVector& target_coords) {
  RVector g;
  ReducedObjective(model, target_coords).value_and_gradient(params, g);
  return g;
}

OptimizeResult optimize(const SubspaceModel& model, const CVector& target_coords, std::size_t iterations,
                        const OptimizerConfig& config) {
  if (iterations == 0) throw DomainError("optimize: iterations must be >= 1");
  if (config.restarts == 0) throw DomainError("optimize: restarts must be >= 1");
  const ReducedObjective objective(model, target_coords);
  const ProtocolParams shape =
      ProtocolParams::zeros(iterations, model.num_targets(), uses_final_layer(config, model.num_targets()));
  const auto n = static_cast<Eigen::Index>(shape.num_angles());

  OptimizeResult best{shape, -1.0, 0, 0};
  std::size_t total_evals = 0;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    RVector x0(n);
    if (restart == 0) {
      x0.setConstant(kPi);
      if (shape.final_phases) x0.tail(static_cast<Eigen::Index>(model.num_targets())).setZero();
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(restart)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> dist(-kPi, kPi);
      for (Eigen::Index i = 0; i < n; ++i) x0[i] = wrap_phase(dist(rng));
    }
    const LocalResult local = local_search(objective, shape, x0, config);
    total_evals += local.evaluations;
    if (local.fidelity > best.fidelity) {
      best.params = shape;
      best.params.assign(local.x);
      best.params.wrap();
      best.fidelity = local.fidelity;
      best.restart = restart;
    }
    if (config.stop_at && best.fidelity >= *config.stop_at) break;
  }
  best.fidelity = objective.value(best.params);
  best.evaluations = total_evals;
  return best;
}

IterationScan minimal_iterations(const SubspaceModel& model, const CVector& target_coords, std::size_t max_iterations,
                                 double threshold, const OptimizerConfig& config) {
  if (max_iterations == 0) throw DomainError("minimal_iterations: max_iterations must be >= 1");
  IterationScan scan;
  OptimizerConfig cfg = config;
  cfg.stop_at = threshold;
  for (std::size_t n = 1; n <= max_iterations; ++n) {
    OptimizeResult r = optimize(model, target_coords, n, cfg);
    scan.best_fidelity.push_back(r.fidelity);
    if (r.fidelity >= threshold) {
      scan.iterations = n;
      scan.result = std::move(r);
      break;
    }
  }
  return scan;
}

PowerLawFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw DomainError("fit_scaling_exponent: at least 3 samples required");
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, v] : samples) {
    if (!(n >= 1.0) || !(v > 0.0)) throw DomainError("fit_scaling_exponent: need n >= 1 and value > 0");
    sx += std::log(n);
    sy += std::log(v);
  }
  const double m = static_cast<double>(samples.size());
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, v] : samples) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (sxx <= 0.0) throw DomainError("fit_scaling_exponent: all n are equal");
  const double slope = sxy / sxx;
  return PowerLawFit{slope, my - slope * mx};
}

}  // namespace rse
