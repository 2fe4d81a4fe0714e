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

#include <cstdint>
#include <utility>
#include <vector>

#include "vqad/state.hpp"

namespace vqad {

// Stochastic gate/readout error model.  After every single-qubit gate a
// uniform Pauli from {X, Y, Z} hits the target with probability p1; after
// every CZ one of the 15 non-identity two-qubit Paulis hits the pair with
// probability p2.  Readout flips each measured bit independently.
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    // Per-site (P(read 1 | prepared 0), P(read 0 | prepared 1)).  Empty means
    // ideal readout; a single entry applies to every site.
    std::vector<std::pair<double, double>> readout;

    void validate() const;
    bool has_readout() const;
    // Flip pair for a given 1-based site under the broadcast rule above.
    std::pair<double, double> readout_for_site(int site, int n_qubits) const;
};

// Monte-Carlo trajectory execution: every shot reruns the circuit with
// independently sampled Pauli injections, then measures once with readout
// flips.  Shot s draws from a stream derived from (seed, s), so results do
// not depend on evaluation order.
ShotHistogram noisy_execute(const StateVector& initial, const ParamCircuit& circuit,
                            const std::vector<double>& params, const std::vector<int>& qubits,
                            std::int64_t n_shots, const NoiseModel& noise, std::uint64_t seed);

// Readout-confusion matrix over the trash register: column j holds the
// measured distribution after preparing basis state j with noiseless X gates.
// Row-major storage, dimension 2^(trash size).
struct CalibrationMatrix {
    int n_t = 0;
    std::vector<double> matrix;

    std::size_t dim() const { return 1ULL << n_t; }
    double& at(std::size_t row, std::size_t col) { return matrix[row * dim() + col]; }
    double at(std::size_t row, std::size_t col) const { return matrix[row * dim() + col]; }
};

CalibrationMatrix build_calibration_matrix(const NoiseModel& noise,
                                           const std::vector<int>& trash, int n_qubits,
                                           std::int64_t n_shots, std::uint64_t seed);

// Shot-free limit: columns are exact tensor products of per-site flip
// matrices.
CalibrationMatrix exact_calibration_matrix(const NoiseModel& noise,
                                           const std::vector<int>& trash, int n_qubits);

struct MitigationResult {
    std::vector<double> probabilities;  // clipped to >= 0, renormalized
    std::vector<double> quasi_counts;   // raw inverse solution times n_shots
};

// Solves cal * p = raw frequencies, clips negatives, renormalizes.  Throws
// when the calibration matrix condition number exceeds 1e8.
MitigationResult mitigate_counts(const ShotHistogram& raw, const CalibrationMatrix& cal);

}  // namespace vqad
