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

// Experiment drivers behind the rse command-line tool.

#ifndef RSE_TOOLS_EXPERIMENT_HPP
#define RSE_TOOLS_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rse/optimizer.hpp"
#include "rse/params_io.hpp"
#include "rse/protocol.hpp"

namespace rse::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitThreshold = 4,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Component {
  Level level = 0;
  double weight = 1.0;
  double phase = 0.0;
};

struct ExperimentConfig {
  // Target: a single level n, an explicit component list, or a named preset.
  Level n = 100;
  std::vector<Component> components;
  std::string preset;
  std::optional<Complex> alpha;  ///< defaults depend on the target

  double omega = 1.0;
  double mismatch = 0.8;  ///< H11 / H22 for the mismatched trace
  double horizon = 20.0;
  double step = 0.01;

  std::optional<std::size_t> iterations;
  std::size_t max_iterations = 8;
  double threshold = 0.995;
  std::size_t restarts = 64;
  std::size_t max_evals = 4000;
  std::uint64_t seed = 1;

  std::vector<Level> n_values = {16, 25, 36, 49, 64, 81, 100, 144, 196, 256, 324, 400};
  bool scan_iterations = true;

  std::optional<std::size_t> dim;
  std::optional<double> require_fidelity;
  std::string out = ".";
  std::string params_path;
  std::vector<std::string> inputs;

  /// Components after resolving the preset or the single level.
  std::vector<Component> resolved_components() const;
  Complex resolved_alpha() const;
  OptimizerConfig optimizer_config() const;
  void validate() const;
};

/// Overlays fields present in a JSON document onto `base`.
ExperimentConfig merge_config_json(const std::string& text, ExperimentConfig base);
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base);

/// Named superposition presets phi1, phi2 and phi3.
std::vector<Component> preset_components(const std::string& name);
std::optional<std::size_t> preset_iterations(const std::string& name);

struct TraceReport {
  FidelityTrace matched;
  FidelityTrace mismatched;
  std::optional<double> first_passage;
  double peak_time = 0.0;
  double transfer_time = 0.0;
  double transfer_bound = 0.0;
  std::size_t dim = 0;
};

TraceReport run_trace(const ExperimentConfig& cfg);
void write_trace(const TraceReport& report, const ExperimentConfig& cfg);

struct ScalingRow {
  Level n = 0;
  double transfer_time = 0.0;
  double transfer_bound = 0.0;
  std::optional<std::size_t> min_iterations;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  PowerLawFit time_fit;
  PowerLawFit bound_fit;
  std::optional<PowerLawFit> iteration_fit;
};

ScalingReport run_scaling(const ExperimentConfig& cfg);
void write_scaling(const ScalingReport& report, const ExperimentConfig& cfg);

struct PreparationReport {
  ParamsRecord record;
  GateSequence gates;
  double reduced_fidelity = 0.0;
  double full_fidelity = 0.0;
  std::size_t dim = 0;
  std::vector<double> scan;  ///< best fidelity per N when the scan ran
};

/// Optimizes in the reduced space and re-simulates the compiled sequence in
/// full space. Scans N = 1..max_iterations when no iteration count is set.
PreparationReport run_preparation(const ExperimentConfig& cfg);
void write_preparation(const PreparationReport& report, const ExperimentConfig& cfg);

struct ExportReport {
  GateSequence gates;
  bool round_trip = false;
  std::optional<double> resimulated_fidelity;
  double recorded_fidelity = 0.0;
};

ExportReport run_export(const ExperimentConfig& cfg);
void write_export(const ExportReport& report, const ExperimentConfig& cfg);

/// Renders every input CSV as one SVG; each non-x column becomes a series.
std::string run_plot(const ExperimentConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string join_path(const std::string& dir, const std::string& name);

}  // namespace rse::cli

#endif  // RSE_TOOLS_EXPERIMENT_HPP
