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
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vqad/noise.hpp"
#include "vqad/pauli.hpp"
#include "vqad/state.hpp"

namespace vqad {

// Hardware-efficient energy ansatz: one Ry per site (slots 0..L-1), a CZ
// ring i -> i+1 mod L, then a second Ry per site (slots L..2L-1).  The ring
// degenerates to a single CZ at L = 2.
ParamCircuit build_vqe_ansatz(int n_qubits);

// Default trash-register size floor(log2 L).
int default_trash_count(int n_sites);

// Contiguous middle block of n_t sites with ceil((L - n_t)/2) sites to its
// left.
std::vector<int> default_trash_sites(int n_sites, int n_t);

// Compression circuit layout: n_t layers of (Ry on every site, one CZ from
// each non-trash site to a trash site rotated per layer, a CZ chain along
// the trash block), then a final Ry on each trash site.  Parameter count is
// n_t * L + n_t.
struct SyndromeSpec {
    int n_qubits = 0;
    std::vector<int> trash;
    int n_layers = 0;
    // Per layer: cross pairs (non-trash site, trash site) followed by
    // trash-trash chain pairs.
    std::vector<std::vector<std::pair<int, int>>> entangling_schedule;

    int n_params() const { return n_layers * n_qubits + static_cast<int>(trash.size()); }
    // Checks the pairing schedule: within a layer every non-trash site occurs
    // exactly once, and across layers every (non-trash, trash) pair occurs
    // exactly once.
    void validate() const;
};

struct SyndromeCircuit {
    ParamCircuit circuit;
    SyndromeSpec spec;
};

SyndromeCircuit build_syndrome_circuit(int n_qubits, const std::vector<int>& trash);

// Mean Hamming weight of the measured trash bits.
double cost_from_counts(const ShotHistogram& hist);

// Exact form (1/2) sum_j (1 - <Z_j>) over trash sites j.
double cost_from_expectations(const StateVector& state, const std::vector<int>& trash);

struct SpsaConfig {
    int max_iter = 100;
    std::optional<double> a;  // empty: calibrated so the first step is ~0.1/parameter
    double c = 0.1;
    std::optional<double> big_a;  // empty: 0.1 * max_iter
    double alpha = 0.602;
    double gamma = 0.101;
    std::uint64_t seed = 0;

    void validate() const;
};

// Gain sequences a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
double spsa_gain_a(int k, double a, double big_a, double alpha);
double spsa_gain_c(int k, double c, double gamma);

struct TrainingRecord {
    std::vector<double> final_params;  // best-seen evaluation
    std::vector<double> cost_trace;    // start point, one entry per iteration, final iterate
    std::int64_t n_evaluations = 0;
    double converged_cost = 0.0;       // min over the trace
};

// Thrown when the objective returns a non-finite value; carries the progress
// made so far.
struct SpsaAbort : std::runtime_error {
    TrainingRecord partial;
    explicit SpsaAbort(const std::string& what, TrainingRecord record)
        : std::runtime_error(what), partial(std::move(record)) {}
};

// Standard simultaneous-perturbation minimizer with Rademacher perturbations
// and two evaluations per step.  Deterministic per seed; returns the best
// evaluated point (the start point counts).
TrainingRecord spsa_minimize(const std::function<double(const std::vector<double>&)>& cost,
                             std::vector<double> init, const SpsaConfig& cfg);

struct VqeResult {
    TrainingRecord record;
    StateVector state;   // ansatz run with the returned parameters
    ParamCircuit ansatz;
};

// Minimizes the exact energy of the ansatz state over the 2L parameters,
// starting from `init` or from seeded uniform [-pi, pi) values.
VqeResult run_vqe(const PauliHamiltonian& h, const SpsaConfig& cfg,
                  const std::optional<std::vector<double>>& init = std::nullopt);

// Cost evaluation mode: exact expectations, finite shots, or finite shots
// under a noise model (noisy costs always go through counts).
struct ShotMode {
    std::int64_t n_shots = 0;  // 0 = exact
    std::uint64_t seed = 0;
    std::optional<NoiseModel> noise;

    static ShotMode exact() { return {}; }
    static ShotMode shots(std::int64_t n, std::uint64_t seed) { return {n, seed, std::nullopt}; }
    static ShotMode noisy(std::int64_t n, std::uint64_t seed, NoiseModel m) {
        return {n, seed, std::move(m)};
    }

    void validate() const;
};

// Uniform [-pi, pi) starting angles from a dedicated seeded stream.
std::vector<double> seeded_uniform_params(std::size_t n, std::uint64_t seed);

// Cost of one compression circuit on one input state under the given mode.
// `eval_seed` feeds the shot sampler; exact mode ignores it.
double syndrome_cost(const StateVector& input, const ParamCircuit& circuit,
                     const std::vector<double>& params, const std::vector<int>& trash,
                     const ShotMode& mode, std::uint64_t eval_seed);

// Trains the compression circuit on the mean cost over the training states.
// Shot seeds are derived from (mode.seed, evaluation index, state index).
TrainingRecord train_syndrome(const std::vector<StateVector>& training_states,
                              const std::vector<int>& trash, const SpsaConfig& cfg,
                              const ShotMode& mode,
                              const std::optional<std::vector<double>>& init = std::nullopt);

}  // namespace vqad
