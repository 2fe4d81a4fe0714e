// Copyright 2026 The vqad authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "vqad/model.hpp"
#include "vqad/noise.hpp"
#include "vqad/pauli.hpp"
#include "vqad/state.hpp"
#include "vqad/variational.hpp"

namespace vqad {

using json = nlohmann::json;

// {"n_qubits": L, "amplitudes": [[re, im], ...]}
json state_to_json(const StateVector& state);
StateVector state_from_json(const json& j);

// {"n_qubits": L, "terms": [{"coeff": c, "paulis": {"3": "Z", ...}}, ...]}
json hamiltonian_to_json(const PauliHamiltonian& h);
PauliHamiltonian hamiltonian_from_json(const json& j);

// {"p1": ..., "p2": ..., "readout": [[p01, p10], ...]}
json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const json& j);

// {"n_t": n, "matrix": [...row-major...]}
json calibration_to_json(const CalibrationMatrix& cal);
CalibrationMatrix calibration_from_json(const json& j);

// {"measured_qubits": [...], "n_shots": N, "counts": {"0101": 17, ...}}
json histogram_to_json(const ShotHistogram& hist);
ShotHistogram histogram_from_json(const json& j);

// Trained parameter bundle shared by the energy and compression ansaetze:
// {"ansatz": "vqe"|"syndrome", "L": ..., "trash": [...], "params": [...],
//  "final_cost": ..., "seed": ..., "model": {...}}
struct TrainedParams {
    std::string ansatz;
    int n_sites = 0;
    std::vector<int> trash;  // empty for the energy ansatz
    std::vector<double> params;
    double final_cost = 0.0;
    std::uint64_t seed = 0;
    json model;  // model description, echoed as-is
};

json trained_params_to_json(const TrainedParams& t);
TrainedParams trained_params_from_json(const json& j);

json model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const json& j);

// Reads/writes a JSON file with the usual error wrapping.
json load_json_file(const std::string& path);
void save_json_file(const json& j, const std::string& path);

}  // namespace vqad
