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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqad/grid.hpp"
#include "vqad/ground.hpp"
#include "vqad/model.hpp"
#include "vqad/variational.hpp"

namespace vqad {

enum class StateSource { Oracle, Vqe };

// Knobs shared by the sweep drivers.  Per-point seeds derive from
// master_seed and the point coordinates, training streams from master_seed
// and the round index, so a whole map reruns bit-identically.
struct SweepSettings {
    std::vector<int> trash;          // empty: defaults from the register size
    SpsaConfig spsa;                 // seed field is ignored (derived instead)
    std::int64_t eval_shots = 0;     // 0 = exact cost evaluation
    std::optional<NoiseModel> noise; // applies to the compression circuit only
    StateSource source = StateSource::Oracle;
    SymmetryBreak symmetry_break = SymmetryBreak::None;
    int vqe_first_iters = 500;       // cold start budget
    int vqe_later_iters = 200;       // warm start budget
    int workers = 1;
    std::uint64_t master_seed = 0;
};

struct PhaseMap {
    GridSpec grid;
    std::vector<std::pair<double, double>> training_points;
    std::vector<double> cost;             // flat grid order
    std::vector<int> labels;              // -1 = unlabeled; empty when unused
    std::vector<double> staggered;        // S of the point's ground state
    std::vector<double> energy;           // ground (or VQE) energy
    std::vector<std::string> provenance;  // "oracle" or "vqe"
    std::vector<std::uint64_t> seeds;     // per-point evaluation seeds
    TrainingRecord training_record;
};

// Trains the compression circuit on the ground state at `train_point` and
// evaluates its cost on every grid point.
PhaseMap anomaly_sweep(const ModelSpec& model, const GridSpec& grid,
                       std::pair<double, double> train_point, const SweepSettings& settings);

struct DiscoveryResult {
    PhaseMap map;                  // final labels; cost from the labeling round
    std::vector<PhaseMap> rounds;  // per-round sweeps
    std::string termination;       // "complete", "max-rounds" or "no-progress: ..."
    int n_phases = 0;
};

// Iterative phase discovery: train at the seed point, label everything below
// the threshold as the current phase, reseed at the costliest unlabeled
// point, repeat.  Threshold <= 0 picks the default 0.3 * n_t.
DiscoveryResult discover_phases(const ModelSpec& model, const GridSpec& grid,
                                std::pair<double, double> seed_point, double anomaly_threshold,
                                int max_rounds, const SweepSettings& settings);

struct VqeSweepPoint {
    std::vector<double> params;
    double energy = 0.0;
    StateVector state;
    std::uint64_t seed = 0;
};

struct VqeSweepResult {
    GridSpec grid;
    std::vector<VqeSweepPoint> points;  // flat grid order
};

// Serpentine warm-started energy optimization over the grid: the first point
// runs `first_iters` from a seeded random start, every later point starts
// from its predecessor's parameters for `later_iters`.
VqeSweepResult vqe_warm_sweep(const ModelSpec& model, const GridSpec& grid,
                              const SpsaConfig& base, int first_iters, int later_iters,
                              std::uint64_t master_seed);

}  // namespace vqad
