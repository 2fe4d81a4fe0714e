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

#include "vqad/phasemap.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vqad/observables.hpp"
#include "vqad/rng.hpp"

namespace vqad {

namespace {

constexpr std::uint64_t kTrainTag = 0x747261696eULL;
constexpr std::uint64_t kShotTag = 0x73686f7473ULL;

std::vector<int> resolve_trash(const SweepSettings& settings, int n_sites) {
    if (!settings.trash.empty()) return settings.trash;
    return default_trash_sites(n_sites, default_trash_count(n_sites));
}

// Ground states for every grid point plus the point energies and S values.
struct GridStates {
    std::vector<StateVector> states;
    std::vector<double> energy;
    std::vector<double> staggered;
    std::string provenance;
};

GridStates collect_grid_states(const ModelSpec& model, const GridSpec& grid,
                               const SweepSettings& settings, std::uint64_t round_seed) {
    GridStates out;
    const int n = grid.size();
    out.states.resize(static_cast<std::size_t>(n));
    out.energy.resize(static_cast<std::size_t>(n));
    out.staggered.resize(static_cast<std::size_t>(n));

    if (settings.source == StateSource::Oracle) {
        out.provenance = "oracle";
        GroundOptions opts;
        opts.symmetry_break = settings.symmetry_break;
        GridGroundStates solved = grid_ground_states(model, grid, opts, settings.workers);
        for (int idx = 0; idx < n; ++idx) {
            auto& sol = solved.solutions[static_cast<std::size_t>(idx)];
            out.energy[static_cast<std::size_t>(idx)] = sol.energy;
            out.staggered[static_cast<std::size_t>(idx)] =
                staggered_magnetization(sol.state);
            out.states[static_cast<std::size_t>(idx)] = std::move(sol.state);
        }
        return out;
    }

    out.provenance = "vqe";
    SpsaConfig base = settings.spsa;
    VqeSweepResult swept = vqe_warm_sweep(model, grid, base, settings.vqe_first_iters,
                                          settings.vqe_later_iters, round_seed);
    for (int idx = 0; idx < n; ++idx) {
        auto& pt = swept.points[static_cast<std::size_t>(idx)];
        out.energy[static_cast<std::size_t>(idx)] = pt.energy;
        out.staggered[static_cast<std::size_t>(idx)] = staggered_magnetization(pt.state);
        out.states[static_cast<std::size_t>(idx)] = std::move(pt.state);
    }
    return out;
}

void parallel_over_points(int n, int workers, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto run = [&]() {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= n) return;
            try {
                body(idx);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    const int n_threads = std::max(1, std::min(workers, n));
    if (n_threads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

PhaseMap sweep_round(const ModelSpec& model, const GridSpec& grid,
                     std::pair<double, double> train_point, const SweepSettings& settings,
                     std::uint64_t round_seed) {
    grid.validate();
    const auto [ti, tj] = grid.locate(train_point.first, train_point.second);
    const int n = grid.size();
    const std::vector<int> trash = resolve_trash(settings, model.n_sites());

    GridStates states = collect_grid_states(model, grid, settings, round_seed);

    SpsaConfig train_cfg = settings.spsa;
    train_cfg.seed = mix_seed(round_seed, kTrainTag);
    ShotMode mode;
    mode.n_shots = settings.eval_shots;
    mode.noise = settings.noise;
    mode.seed = mix_seed(round_seed, kShotTag);

    const std::vector<StateVector> training = {
        states.states[static_cast<std::size_t>(grid.flat_index(ti, tj))]};
    TrainingRecord record = train_syndrome(training, trash, train_cfg, mode);

    const SyndromeCircuit syn = build_syndrome_circuit(model.n_sites(), trash);

    PhaseMap map;
    map.grid = grid;
    map.training_points = {train_point};
    map.cost.resize(static_cast<std::size_t>(n));
    map.staggered = std::move(states.staggered);
    map.energy = std::move(states.energy);
    map.provenance.assign(static_cast<std::size_t>(n), states.provenance);
    map.seeds.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < grid.n2(); ++j)
        for (int i = 0; i < grid.n1(); ++i) {
            const auto [x, y] = grid.point(i, j);
            map.seeds[static_cast<std::size_t>(grid.flat_index(i, j))] =
                seed_for_point(round_seed, x, y);
        }

    parallel_over_points(n, settings.workers, [&](int idx) {
        map.cost[static_cast<std::size_t>(idx)] =
            syndrome_cost(states.states[static_cast<std::size_t>(idx)], syn.circuit,
                          record.final_params, trash, mode,
                          map.seeds[static_cast<std::size_t>(idx)]);
    });

    map.training_record = std::move(record);
    return map;
}

}  // namespace

PhaseMap anomaly_sweep(const ModelSpec& model, const GridSpec& grid,
                       std::pair<double, double> train_point, const SweepSettings& settings) {
    return sweep_round(model, grid, train_point, settings, settings.master_seed);
}

DiscoveryResult discover_phases(const ModelSpec& model, const GridSpec& grid,
                                std::pair<double, double> seed_point, double anomaly_threshold,
                                int max_rounds, const SweepSettings& settings) {
    grid.validate();
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    const std::vector<int> trash = resolve_trash(settings, model.n_sites());
    const double threshold =
        anomaly_threshold > 0.0 ? anomaly_threshold : 0.3 * static_cast<double>(trash.size());

    const int n = grid.size();
    DiscoveryResult result;
    result.map.grid = grid;
    result.map.labels.assign(static_cast<std::size_t>(n), -1);
    result.map.cost.assign(static_cast<std::size_t>(n), 0.0);

    std::pair<double, double> current = seed_point;
    for (int round = 1; round <= max_rounds; ++round) {
        PhaseMap round_map = sweep_round(model, grid, current, settings,
                                         mix_seed(settings.master_seed,
                                                  static_cast<std::uint64_t>(round)));
        result.map.training_points.push_back(current);

        int newly_labeled = 0;
        for (int idx = 0; idx < n; ++idx) {
            if (result.map.labels[static_cast<std::size_t>(idx)] >= 0) continue;
            if (round_map.cost[static_cast<std::size_t>(idx)] < threshold) {
                result.map.labels[static_cast<std::size_t>(idx)] = round;
                result.map.cost[static_cast<std::size_t>(idx)] =
                    round_map.cost[static_cast<std::size_t>(idx)];
                ++newly_labeled;
            }
        }
        if (round == 1) {
            result.map.staggered = round_map.staggered;
            result.map.energy = round_map.energy;
            result.map.provenance = round_map.provenance;
            result.map.seeds = round_map.seeds;
        }
        const std::vector<double> last_costs = round_map.cost;
        result.rounds.push_back(std::move(round_map));
        if (newly_labeled > 0) result.n_phases = round;

        if (newly_labeled == 0) {
            result.termination = "no-progress: round " + std::to_string(round) +
                                 " labeled no points below threshold " +
                                 std::to_string(threshold);
            break;
        }

        int arg_max = -1;
        double max_cost = -1.0;
        for (int idx = 0; idx < n; ++idx) {
            if (result.map.labels[static_cast<std::size_t>(idx)] >= 0) continue;
            if (last_costs[static_cast<std::size_t>(idx)] > max_cost) {
                max_cost = last_costs[static_cast<std::size_t>(idx)];
                arg_max = idx;
            }
        }
        if (arg_max < 0) {
            result.termination = "complete";
            break;
        }
        if (round == max_rounds) {
            result.termination = "max-rounds";
            break;
        }
        const int i = arg_max % grid.n1();
        const int j = arg_max / grid.n1();
        current = grid.point(i, j);

        // Carry the unlabeled points' latest cost so the final map has a
        // value everywhere even when rounds run out.
        for (int idx = 0; idx < n; ++idx)
            if (result.map.labels[static_cast<std::size_t>(idx)] < 0)
                result.map.cost[static_cast<std::size_t>(idx)] =
                    last_costs[static_cast<std::size_t>(idx)];
    }
    if (result.termination.empty()) result.termination = "max-rounds";
    return result;
}

VqeSweepResult vqe_warm_sweep(const ModelSpec& model, const GridSpec& grid,
                              const SpsaConfig& base, int first_iters, int later_iters,
                              std::uint64_t master_seed) {
    grid.validate();
    if (first_iters < 1 || later_iters < 1)
        throw std::invalid_argument("iteration budgets must be >= 1");

    VqeSweepResult out;
    out.grid = grid;
    out.points.resize(static_cast<std::size_t>(grid.size()));

    std::optional<std::vector<double>> warm;
    bool first = true;
    for (int j = 0; j < grid.n2(); ++j) {
        const bool reversed = j % 2 == 1;  // serpentine traversal
        for (int step = 0; step < grid.n1(); ++step) {
            const int i = reversed ? grid.n1() - 1 - step : step;
            const auto [x, y] = grid.point(i, j);

            SpsaConfig cfg = base;
            cfg.max_iter = first ? first_iters : later_iters;
            cfg.seed = seed_for_point(master_seed, x, y);

            const ModelSpec m = model.at(grid, i, j);
            VqeResult solved = run_vqe(m.build(), cfg, warm);

            VqeSweepPoint& pt = out.points[static_cast<std::size_t>(grid.flat_index(i, j))];
            pt.params = solved.record.final_params;
            pt.energy = solved.record.converged_cost;
            pt.state = std::move(solved.state);
            pt.seed = cfg.seed;

            warm = pt.params;
            first = false;
        }
    }
    return out;
}

}  // namespace vqad
