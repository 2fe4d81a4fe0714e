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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqad/config.hpp"
#include "vqad/ground.hpp"
#include "vqad/io.hpp"
#include "vqad/model.hpp"
#include "vqad/observables.hpp"
#include "vqad/phasemap.hpp"
#include "vqad/rng.hpp"
#include "vqad/selfcheck.hpp"
#include "vqad/serialize.hpp"
#include "vqad/variational.hpp"

namespace {

using vqad::json;

constexpr std::uint64_t kTrainTag = 0x747261696eULL;
constexpr std::uint64_t kShotTag = 0x73686f7473ULL;

// Model copy with the config's train_point applied to the grid axes.
vqad::ModelSpec model_at_point(const vqad::RunConfig& cfg) {
    vqad::ModelSpec m = cfg.model;
    m.set_field(cfg.grid.axis1.name, cfg.train_point.first);
    m.set_field(cfg.grid.axis2.name, cfg.train_point.second);
    return m;
}

vqad::StateVector training_state(const vqad::RunConfig& cfg) {
    const vqad::ModelSpec m = model_at_point(cfg);
    if (cfg.source == vqad::StateSource::Vqe) {
        vqad::SpsaConfig vqe_cfg = cfg.spsa;
        vqe_cfg.max_iter = cfg.vqe_first_iters;
        vqe_cfg.seed = vqad::mix_seed(cfg.seed, kTrainTag);
        return vqad::run_vqe(m.build(), vqe_cfg).state;
    }
    vqad::GroundOptions opts;
    opts.sector = m.sector();
    opts.symmetry_break = cfg.symmetry_break;
    return vqad::exact_ground_state(m.build(), opts).state;
}

json model_echo(const vqad::RunConfig& cfg, const vqad::ModelSpec& m) {
    json j = vqad::model_to_json(m);
    j["train_point"] = {cfg.train_point.first, cfg.train_point.second};
    return j;
}

int cmd_ground_truth(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    vqad::GroundOptions opts;
    opts.sector = cfg.model.sector();
    opts.symmetry_break = cfg.symmetry_break;
    const auto states =
        vqad::grid_ground_states(cfg.model, cfg.grid, opts, cfg.resolved_workers());

    const int L = cfg.model.n_sites();
    std::vector<vqad::ObservableRow> rows(static_cast<std::size_t>(cfg.grid.size()));
    for (int j = 0; j < cfg.grid.n2(); ++j) {
        for (int i = 0; i < cfg.grid.n1(); ++i) {
            const auto& sol = states.at(i, j);
            vqad::ObservableRow row;
            row.staggered = vqad::staggered_magnetization(sol.state);
            row.cdw = L % 2 == 0 ? vqad::cdw_order_parameter(vqad::site_densities(sol.state))
                                 : std::numeric_limits<double>::quiet_NaN();
            row.es_degeneracy = vqad::es_degeneracy(vqad::schmidt_spectrum(sol.state, L / 2));
            row.energy = sol.energy;
            rows[static_cast<std::size_t>(cfg.grid.flat_index(i, j))] = row;
        }
    }
    writer.write_text("observables.csv", vqad::observables_csv(cfg.grid, rows));
    if (cfg.save_states) vqad::save_grid_states(writer, states);
    return 0;
}

int cmd_vqe_sweep(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    const auto sweep = vqad::vqe_warm_sweep(cfg.model, cfg.grid, cfg.spsa, cfg.vqe_first_iters,
                                            cfg.vqe_later_iters, cfg.seed);
    vqad::GroundOptions opts;
    opts.sector = cfg.model.sector();
    const auto exact = vqad::grid_ground_states(cfg.model, cfg.grid, opts, cfg.resolved_workers());
    std::vector<double> energies;
    energies.reserve(exact.solutions.size());
    for (const auto& sol : exact.solutions) energies.push_back(sol.energy);
    writer.write_text("vqe.csv", vqad::vqe_csv(sweep, energies));
    return 0;
}

int cmd_vqad_train(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    const vqad::StateVector state = training_state(cfg);
    vqad::SpsaConfig train_cfg = cfg.spsa;
    train_cfg.seed = vqad::mix_seed(cfg.seed, kTrainTag);
    vqad::ShotMode mode;
    mode.n_shots = cfg.shots;
    mode.seed = vqad::mix_seed(cfg.seed, kShotTag);
    mode.noise = cfg.noise;
    const auto record = vqad::train_syndrome({state}, cfg.trash, train_cfg, mode);

    vqad::TrainedParams bundle;
    bundle.ansatz = "syndrome";
    bundle.n_sites = cfg.model.n_sites();
    bundle.trash = cfg.trash;
    bundle.params = record.final_params;
    bundle.final_cost = record.converged_cost;
    bundle.seed = cfg.seed;
    bundle.model = model_echo(cfg, model_at_point(cfg));
    writer.write_json("trained_params.json", vqad::trained_params_to_json(bundle));

    json trace = {{"cost_trace", record.cost_trace}, {"n_evaluations", record.n_evaluations}};
    writer.write_json("training_trace.json", trace);
    std::cout << "converged cost " << record.converged_cost << " after "
              << record.n_evaluations << " evaluations\n";
    return 0;
}

void write_phasemap_artifacts(const vqad::RunConfig& cfg, const vqad::PhaseMap& map,
                              vqad::ArtifactWriter& writer) {
    writer.write_text("phasemap.csv", vqad::phasemap_csv(map));
    vqad::TrainedParams bundle;
    bundle.ansatz = "syndrome";
    bundle.n_sites = cfg.model.n_sites();
    bundle.trash = cfg.trash;
    bundle.params = map.training_record.final_params;
    bundle.final_cost = map.training_record.converged_cost;
    bundle.seed = cfg.seed;
    bundle.model = model_echo(cfg, model_at_point(cfg));
    writer.write_json("trained_params.json", vqad::trained_params_to_json(bundle));
}

int cmd_vqad_sweep(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    const auto map = vqad::anomaly_sweep(cfg.model, cfg.grid, cfg.train_point,
                                         cfg.sweep_settings());
    write_phasemap_artifacts(cfg, map, writer);
    return 0;
}

int cmd_discover(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    const auto result = vqad::discover_phases(cfg.model, cfg.grid, cfg.train_point, cfg.threshold,
                                              cfg.max_rounds, cfg.sweep_settings());
    writer.write_text("phasemap.csv", vqad::phasemap_csv(result.map));
    for (std::size_t r = 0; r < result.rounds.size(); ++r)
        writer.write_text("rounds/round" + std::to_string(r + 1) + ".csv",
                          vqad::phasemap_csv(result.rounds[r]));
    json summary = {{"n_phases", result.n_phases}, {"termination", result.termination}};
    json points = json::array();
    for (const auto& [x, y] : result.map.training_points) points.push_back({x, y});
    summary["training_points"] = std::move(points);
    writer.write_json("discovery.json", summary);
    std::cout << "found " << result.n_phases << " phase(s); termination: " << result.termination
              << '\n';
    return 0;
}

int cmd_calibrate(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    vqad::NoiseModel noise = cfg.noise.value_or(vqad::NoiseModel{});
    const int L = cfg.model.n_sites();
    const vqad::CalibrationMatrix cal =
        cfg.calibration_shots > 0
            ? vqad::build_calibration_matrix(noise, cfg.trash, L, cfg.calibration_shots,
                                             vqad::mix_seed(cfg.seed, kShotTag))
            : vqad::exact_calibration_matrix(noise, cfg.trash, L);
    writer.write_json("calibration.json", vqad::calibration_to_json(cal));
    return 0;
}

int cmd_mitigate(const vqad::RunConfig& cfg, vqad::ArtifactWriter& writer) {
    const auto raw = vqad::histogram_from_json(vqad::load_json_file(cfg.counts_file));
    const auto cal = vqad::calibration_from_json(vqad::load_json_file(cfg.calibration_file));
    const auto result = vqad::mitigate_counts(raw, cal);

    const int n_t = cal.n_t;
    json probs = json::object();
    json quasi = json::object();
    for (std::size_t k = 0; k < result.probabilities.size(); ++k) {
        std::string key(static_cast<std::size_t>(n_t), '0');
        for (int b = 0; b < n_t; ++b)
            if (k >> (n_t - 1 - b) & 1) key[static_cast<std::size_t>(b)] = '1';
        probs[key] = result.probabilities[k];
        quasi[key] = result.quasi_counts[k];
    }
    json out = {{"measured_qubits", raw.measured_qubits},
                {"n_shots", raw.n_shots},
                {"probabilities", std::move(probs)},
                {"quasi_counts", std::move(quasi)}};
    writer.write_json("mitigated.json", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational anomaly detection on spin chains"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::int64_t> seed_flag;
    std::optional<std::int64_t> shots_flag;
    std::optional<int> workers_flag;
    std::string out_flag;

    app.add_option("--config", config_path, "JSON config file (a run manifest also works)");
    app.add_option("--set", overrides, "dotted-path override, e.g. --set spsa.max_iter=300");
    app.add_option("--seed", seed_flag, "master seed");
    app.add_option("--shots", shots_flag, "shot count (0 = exact)");
    app.add_option("--workers", workers_flag, "worker threads (0 = auto)");
    app.add_option("--out", out_flag, "output directory (falls back to $VQAD_OUT/<command>)");

    for (const char* name : {"ground-truth", "vqe-sweep", "vqad-train", "vqad-sweep", "discover",
                             "calibrate", "mitigate", "check"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    vqad::RunConfig cfg;
    try {
        json raw = json::object();
        if (!config_path.empty()) {
            raw = vqad::load_json_file(config_path);
            // Replays accept a manifest; overrides apply to its inner config.
            if (raw.is_object() && raw.contains("config") && raw.at("config").is_object() &&
                (raw.contains("outputs") || raw.contains("versions")))
                raw = raw.at("config");
        }
        const auto subcommands = app.get_subcommands();
        if (!subcommands.empty()) raw["command"] = subcommands.front()->get_name();
        for (const std::string& assignment : overrides) vqad::apply_override(raw, assignment);
        if (seed_flag) raw["seed"] = *seed_flag;
        if (shots_flag) raw["shots"] = *shots_flag;
        if (workers_flag) raw["workers"] = *workers_flag;
        if (!out_flag.empty()) raw["out"] = out_flag;

        cfg = vqad::parse_config(raw);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    if (cfg.command == "check") return vqad::run_selfcheck(std::cout) == 0 ? 0 : 3;

    if (cfg.out_dir.empty()) {
        if (const char* root = std::getenv("VQAD_OUT"))
            cfg.out_dir = std::string(root) + "/" + cfg.command;
    }
    if (cfg.out_dir.empty()) {
        std::cerr << "config error: no output directory (--out or $VQAD_OUT)\n";
        return 2;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        vqad::ArtifactWriter writer(cfg.out_dir);
        int rc = 0;
        if (cfg.command == "ground-truth") rc = cmd_ground_truth(cfg, writer);
        else if (cfg.command == "vqe-sweep") rc = cmd_vqe_sweep(cfg, writer);
        else if (cfg.command == "vqad-train") rc = cmd_vqad_train(cfg, writer);
        else if (cfg.command == "vqad-sweep") rc = cmd_vqad_sweep(cfg, writer);
        else if (cfg.command == "discover") rc = cmd_discover(cfg, writer);
        else if (cfg.command == "calibrate") rc = cmd_calibrate(cfg, writer);
        else if (cfg.command == "mitigate") rc = cmd_mitigate(cfg, writer);
        if (rc != 0) return rc;

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        writer.commit(cfg, wall);
        for (const std::string& name : writer.files()) std::cout << writer.path(name) << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
