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

#include "vqad/io.hpp"

#include "vqad/observables.hpp"

#include <Eigen/Core>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace vqad {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string observables_csv(const GridSpec& grid, const std::vector<ObservableRow>& rows) {
    if (rows.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("observable row count does not match the grid");
    std::string body = "axis1,axis2,S,O_CDW,D_ES,energy\n";
    for (int j = 0; j < static_cast<int>(grid.axis2.values.size()); ++j) {
        for (int i = 0; i < static_cast<int>(grid.axis1.values.size()); ++i) {
            const ObservableRow& r = rows[static_cast<std::size_t>(grid.flat_index(i, j))];
            body += format_double(grid.axis1.values[static_cast<std::size_t>(i)]);
            body += ',';
            body += format_double(grid.axis2.values[static_cast<std::size_t>(j)]);
            body += ',';
            body += format_double(r.staggered);
            body += ',';
            body += format_double(r.cdw);
            body += ',';
            body += format_double(r.es_degeneracy);
            body += ',';
            body += format_double(r.energy);
            body += '\n';
        }
    }
    return body;
}

std::string phasemap_csv(const PhaseMap& map) {
    const GridSpec& grid = map.grid;
    std::string body = "axis1,axis2,cost,label,S,provenance,seed\n";
    for (int j = 0; j < static_cast<int>(grid.axis2.values.size()); ++j) {
        for (int i = 0; i < static_cast<int>(grid.axis1.values.size()); ++i) {
            const std::size_t k = static_cast<std::size_t>(grid.flat_index(i, j));
            body += format_double(grid.axis1.values[static_cast<std::size_t>(i)]);
            body += ',';
            body += format_double(grid.axis2.values[static_cast<std::size_t>(j)]);
            body += ',';
            body += format_double(map.cost[k]);
            body += ',';
            body += std::to_string(map.labels.empty() ? -1 : map.labels[k]);
            body += ',';
            body += format_double(map.staggered[k]);
            body += ',';
            body += map.provenance[k];
            body += ',';
            body += std::to_string(map.seeds[k]);
            body += '\n';
        }
    }
    return body;
}

std::string vqe_csv(const VqeSweepResult& sweep, const std::vector<double>& exact_energies) {
    const GridSpec& grid = sweep.grid;
    if (exact_energies.size() != sweep.points.size())
        throw std::invalid_argument("exact energy count does not match the sweep");
    std::string body = "axis1,axis2,energy,exact_energy,rel_error,staggered,seed\n";
    for (int j = 0; j < static_cast<int>(grid.axis2.values.size()); ++j) {
        for (int i = 0; i < static_cast<int>(grid.axis1.values.size()); ++i) {
            const std::size_t k = static_cast<std::size_t>(grid.flat_index(i, j));
            const VqeSweepPoint& p = sweep.points[k];
            const double exact = exact_energies[k];
            const double denom = std::abs(exact) > 1e-12 ? std::abs(exact) : 1.0;
            body += format_double(grid.axis1.values[static_cast<std::size_t>(i)]);
            body += ',';
            body += format_double(grid.axis2.values[static_cast<std::size_t>(j)]);
            body += ',';
            body += format_double(p.energy);
            body += ',';
            body += format_double(exact);
            body += ',';
            body += format_double((p.energy - exact) / denom);
            body += ',';
            body += format_double(staggered_magnetization(p.state));
            body += ',';
            body += std::to_string(p.seed);
            body += '\n';
        }
    }
    return body;
}

ArtifactWriter::ArtifactWriter(std::string out_dir) : out_dir_(std::move(out_dir)) {
    if (out_dir_.empty()) throw std::invalid_argument("output directory not set");
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir_ + ": " + ec.message());
}

ArtifactWriter::~ArtifactWriter() {
    if (committed_) return;
    // Failed run: take the partial outputs with us.
    for (const std::string& name : files_) {
        std::error_code ec;
        fs::remove(path(name), ec);
    }
}

std::string ArtifactWriter::path(const std::string& name) const {
    return (fs::path(out_dir_) / name).string();
}

void ArtifactWriter::record(const std::string& name) {
    const fs::path rel(name);
    if (rel.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(fs::path(out_dir_) / rel.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory for " + name + ": " + ec.message());
    }
    files_.push_back(name);
}

void ArtifactWriter::write_text(const std::string& name, const std::string& body) {
    record(name);
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path(name) + " for writing");
    out << body;
    if (!out) throw std::runtime_error("short write to " + path(name));
}

void ArtifactWriter::write_json(const std::string& name, const json& j) {
    record(name);
    save_json_file(j, path(name));
}

void ArtifactWriter::write_state(const std::string& name, const StateVector& state) {
    record(name);
    save_state_binary(state, path(name));
}

void ArtifactWriter::commit(const RunConfig& config, double wall_clock_s) {
    json manifest = {{"command", config.command}, {"config", config.resolved()},
                     {"seed", config.seed},       {"outputs", files_},
                     {"versions", versions_json()}, {"wall_clock_s", wall_clock_s}};
    record("manifest.json");
    save_json_file(manifest, path("manifest.json"));
    committed_ = true;
}

json versions_json() {
    return {{"vqad", "0.1.0"},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                          "." + std::to_string(EIGEN_MINOR_VERSION)},
            {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

void save_grid_states(ArtifactWriter& writer, const GridGroundStates& grid_states) {
    const GridSpec& grid = grid_states.grid;
    json index = json::array();
    for (int j = 0; j < static_cast<int>(grid.axis2.values.size()); ++j) {
        for (int i = 0; i < static_cast<int>(grid.axis1.values.size()); ++i) {
            const GroundSolution& sol = grid_states.at(i, j);
            const std::string name =
                "states/p" + std::to_string(i) + "_" + std::to_string(j) + ".bin";
            writer.write_state(name, sol.state);
            index.push_back({{"axis1", grid.axis1.values[static_cast<std::size_t>(i)]},
                             {"axis2", grid.axis2.values[static_cast<std::size_t>(j)]},
                             {"file", name},
                             {"energy", sol.energy}});
        }
    }
    writer.write_json("states/index.json", index);
}

}  // namespace vqad
