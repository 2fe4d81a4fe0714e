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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vqad {

using cplx = std::complex<double>;

// Hard cap for circuit simulation (dense statevector, 65536 amplitudes).
inline constexpr int kMaxCircuitQubits = 16;
// The container itself tolerates a few more sites so that sector-restricted
// eigensolvers can hand back embedded ground states.
inline constexpr int kMaxStateQubits = 20;

// Pure state of n_qubits sites.  Sites are indexed 1..n_qubits and site 1 is
// the MOST significant bit of a basis label, so the basis ket |10110> reads
// left to right.  Z|0> = +|0>, Z|1> = -|1>.
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    static StateVector zero_state(int n_qubits);
    static StateVector basis_state(int n_qubits, std::uint64_t basis_index);
    // Builds the basis ket spelled out as a string of '0'/'1', site 1 first.
    static StateVector from_bitstring(const std::string& bits);

    std::uint64_t dim() const { return amplitudes.size(); }
    double norm() const;
    void renormalize();

    // Bit of 1-based `site` inside basis label `b`.
    static int site_bit(std::uint64_t b, int site, int n_qubits) {
        return static_cast<int>((b >> (n_qubits - site)) & 1ULL);
    }
};

// Wraps a raw amplitude vector (length must be a power of two).  The norm
// must already be within 1e-8 of one unless `renormalize` is set; the stored
// state is renormalized exactly either way.
StateVector inject_state(std::vector<cplx> amplitudes, bool renormalize = false);

struct Gate {
    enum class Kind { Ry, Cz, PauliX, PauliY, PauliZ };

    Kind kind = Kind::Ry;
    int q1 = 0;         // 1-based site
    int q2 = 0;         // second site, CZ only
    double angle = 0.0; // fixed Ry angle, used when param < 0
    int param = -1;     // Ry parameter slot, -1 = fixed angle

    static Gate ry_fixed(int site, double angle);
    static Gate ry_slot(int site, int slot);
    static Gate cz(int a, int b);
    static Gate pauli_x(int site);
    static Gate pauli_y(int site);
    static Gate pauli_z(int site);

    bool is_two_qubit() const { return kind == Kind::Cz; }
};

// Gate list over a fixed register with named Ry parameter slots.
// Invariant: every referenced slot is < n_params and every slot in
// 0..n_params-1 is referenced by at least one gate.
struct ParamCircuit {
    int n_qubits = 0;
    int n_params = 0;
    std::vector<Gate> gates;

    // Throws std::invalid_argument when the invariants above are broken or a
    // gate touches a site outside 1..n_qubits.
    void validate() const;
};

// Applies one gate in place.  `params` supplies Ry slot values.
void apply_gate(StateVector& state, const Gate& gate, const std::vector<double>& params);

// Runs the circuit on a copy of `initial` and returns the final state.
StateVector run_circuit(const StateVector& initial, const ParamCircuit& circuit,
                        const std::vector<double>& params);

// Counts of measured bitstrings.  Keys are '0'/'1' strings ordered like
// `measured_qubits` (first listed qubit = first character).
struct ShotHistogram {
    std::vector<int> measured_qubits;
    std::map<std::string, std::int64_t> counts;
    std::int64_t n_shots = 0;
};

// Marginal distribution over the listed qubits.  Outcome index treats the
// first listed qubit as the most significant bit.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits);

// Samples the listed qubits n_shots times by inverse-CDF over the marginal
// distribution (computed once).  Deterministic for a fixed seed.
ShotHistogram sample_measurements(const StateVector& state, const std::vector<int>& qubits,
                                  std::int64_t n_shots, std::uint64_t seed);

// Squared Schmidt coefficients across the cut between site `cut_position`
// and `cut_position`+1, sorted descending; entries below 1e-12 are dropped.
struct SchmidtSpectrum {
    std::vector<double> squared_coefficients;
    int cut_position = 0;
};

SchmidtSpectrum schmidt_spectrum(const StateVector& state, int cut_position);

// Binary round trip: u32 qubit count then interleaved (re, im) float64 pairs,
// little-endian throughout.
void save_state_binary(const StateVector& state, const std::string& path);
StateVector load_state_binary(const std::string& path);

}  // namespace vqad
