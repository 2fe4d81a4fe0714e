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
#include <vector>

#include "vqad/config.hpp"
#include "vqad/ground.hpp"
#include "vqad/phasemap.hpp"
#include "vqad/serialize.hpp"

namespace vqad {

// Shortest decimal that round-trips the double; "." form, never locale bound.
std::string format_double(double value);

// CSV bodies are built as strings so they stay byte-stable and testable.
// Column order is fixed; headers never change with the model.
struct ObservableRow {
    double staggered = 0.0;
    double cdw = 0.0;
    double es_degeneracy = 0.0;
    double energy = 0.0;
};

// header: axis1,axis2,S,O_CDW,D_ES,energy
std::string observables_csv(const GridSpec& grid, const std::vector<ObservableRow>& rows);

// header: axis1,axis2,cost,label,S,provenance,seed
std::string phasemap_csv(const PhaseMap& map);

// header: axis1,axis2,energy,exact_energy,rel_error,seed
std::string vqe_csv(const VqeSweepResult& sweep, const std::vector<double>& exact_energies);

// Collects the files of one run and cleans up after itself: if the run throws
// before `commit`, every file written so far is removed.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::string out_dir);  // creates the directory
    ~ArtifactWriter();

    void write_text(const std::string& name, const std::string& body);
    void write_json(const std::string& name, const json& j);
    void write_state(const std::string& name, const StateVector& state);

    std::string path(const std::string& name) const;
    const std::vector<std::string>& files() const { return files_; }

    // Writes manifest.json (always last) and keeps everything.
    void commit(const RunConfig& config, double wall_clock_s);

private:
    void record(const std::string& name);

    std::string out_dir_;
    std::vector<std::string> files_;
    bool committed_ = false;
};

json versions_json();

// Saves every grid ground state as states/p<i>_<j>.bin plus states/index.json
// mapping grid coordinates to files.
void save_grid_states(ArtifactWriter& writer, const GridGroundStates& grid_states);

}  // namespace vqad
