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

#include "vqad/ground.hpp"
#include "vqad/model.hpp"
#include "vqad/phasemap.hpp"
#include "vqad/serialize.hpp"
#include "vqad/variational.hpp"

namespace vqad {

// Fully resolved run description.  Everything a command needs is in here;
// re-parsing the resolved() echo reproduces the same config bit for bit.
struct RunConfig {
    std::string command;

    ModelSpec model;
    GridSpec grid;
    std::vector<int> trash;

    SpsaConfig spsa;  // seed field is ignored; streams derive from `seed`
    std::optional<NoiseModel> noise;
    std::int64_t shots = 0;              // 0 = exact expectation values
    std::int64_t calibration_shots = 0;  // 0 = exact confusion matrix

    std::uint64_t seed = 1;
    std::string out_dir;
    int workers = 0;  // 0 = one per hardware thread

    std::pair<double, double> train_point{0.0, 0.0};
    StateSource source = StateSource::Oracle;
    SymmetryBreak symmetry_break = SymmetryBreak::None;

    double threshold = 0.0;  // <= 0: discovery default of 0.3 * n_t
    int max_rounds = 8;
    int vqe_first_iters = 500;
    int vqe_later_iters = 200;

    bool save_states = false;
    std::string params_file;
    std::string counts_file;
    std::string calibration_file;

    // Echo with every default made explicit; parse_config(resolved()) is a
    // fixed point.
    json resolved() const;

    SweepSettings sweep_settings() const;
    int resolved_workers() const;
};

// Validates, rejects unknown keys by name, resolves defaults.  Accepts either
// a bare config object or a run manifest (the inner "config" object is used).
RunConfig parse_config(const json& raw);

// load_json_file + parse_config.
RunConfig load_config(const std::string& path);

// Applies one `dotted.path=value` override onto a raw config object.  The
// value is parsed as JSON when possible, otherwise taken as a string.
void apply_override(json& config, const std::string& assignment);

}  // namespace vqad
