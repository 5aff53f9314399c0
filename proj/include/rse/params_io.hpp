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

#ifndef RSE_PARAMS_IO_HPP
#define RSE_PARAMS_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rse/common.hpp"
#include "rse/protocol.hpp"

namespace rse {

/// Optimized protocol as stored on disk. Besides the angles it carries the
/// coherent amplitude and target levels needed to recompile the gates.
struct ParamsRecord {
  ProtocolParams params;
  double achieved_fidelity = 0.0;
  std::uint64_t seed = 0;
  Complex alpha{0.0, 0.0};
  std::vector<Level> levels;
  std::vector<Complex> target_amplitudes;  ///< per level; empty when unknown
};

/// JSON document with fields N, c, B, final_phase, achieved_fidelity, seed,
/// alpha ([re, im]), levels and target ([[re, im], ...]).
std::string params_to_json(const ParamsRecord& record);

/// Throws DomainError on malformed or inconsistent documents.
ParamsRecord params_from_json(const std::string& text);

}  // namespace rse

#endif  // RSE_PARAMS_IO_HPP
