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

#include "rse/params_io.hpp"

#include <json.hpp>

namespace rse {

using nlohmann::json;

std::string params_to_json(const ParamsRecord& record) {
  const ProtocolParams& p = record.params;
  p.validate();
  json doc;
  doc["N"] = p.iterations();
  doc["c"] = std::vector<double>(p.coherent_phases.begin(), p.coherent_phases.end());
  json b = json::array();
  for (Eigen::Index j = 0; j < p.fock_phases.rows(); ++j) {
    json row = json::array();
    for (Eigen::Index k = 0; k < p.fock_phases.cols(); ++k) row.push_back(p.fock_phases(j, k));
    b.push_back(std::move(row));
  }
  doc["B"] = std::move(b);
  doc["final_phase"] = p.final_phases ? json(std::vector<double>(p.final_phases->begin(), p.final_phases->end()))
                                      : json::array();
  doc["achieved_fidelity"] = record.achieved_fidelity;
  doc["seed"] = record.seed;
  doc["alpha"] = {record.alpha.real(), record.alpha.imag()};
  doc["levels"] = record.levels;
  json target = json::array();
  for (const Complex& c : record.target_amplitudes) target.push_back({c.real(), c.imag()});
  doc["target"] = std::move(target);
  return doc.dump(2) + "\n";
}

ParamsRecord params_from_json(const std::string& text) {
  ParamsRecord rec;
  try {
    const json doc = json::parse(text);
    const auto n = doc.at("N").get<std::size_t>();
    const auto c = doc.at("c").get<std::vector<double>>();
    const auto b = doc.at("B").get<std::vector<std::vector<double>>>();
    rec.levels = doc.at("levels").get<std::vector<Level>>();
    const std::size_t k = rec.levels.size();
    if (c.size() != n || b.size() != n) throw DomainError("params: c and B must have N entries");
    rec.params = ProtocolParams::zeros(n, k, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].size() != k) throw DomainError("params: every B row needs one phase per level");
      rec.params.coherent_phases[static_cast<Eigen::Index>(j)] = c[j];
      for (std::size_t i = 0; i < k; ++i) {
        rec.params.fock_phases(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = b[j][i];
      }
    }
    if (doc.contains("final_phase") && !doc.at("final_phase").empty()) {
      const auto f = doc.at("final_phase").get<std::vector<double>>();
      if (f.size() != k) throw DomainError("params: final_phase needs one phase per level");
      rec.params.final_phases = Eigen::Map<const RVector>(f.data(), static_cast<Eigen::Index>(f.size()));
    }
    rec.achieved_fidelity = doc.value("achieved_fidelity", 0.0);
    rec.seed = doc.value("seed", std::uint64_t{0});
    const auto a = doc.at("alpha").get<std::vector<double>>();
    if (a.size() != 2) throw DomainError("params: alpha must be [re, im]");
    rec.alpha = Complex(a[0], a[1]);
    if (doc.contains("target")) {
      for (const auto& entry : doc.at("target")) {
        const auto v = entry.get<std::vector<double>>();
        if (v.size() != 2) throw DomainError("params: target entries must be [re, im]");
        rec.target_amplitudes.emplace_back(v[0], v[1]);
      }
      if (!rec.target_amplitudes.empty() && rec.target_amplitudes.size() != k) {
        throw DomainError("params: target needs one amplitude per level");
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("params: ") + e.what());
  }
  rec.params.validate();
  return rec;
}

}  // namespace rse
