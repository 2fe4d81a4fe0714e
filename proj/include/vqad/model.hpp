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

#include <optional>
#include <string>
#include <vector>

#include "vqad/grid.hpp"
#include "vqad/pauli.hpp"

namespace vqad {

// Model template for sweeps: one of the two supported chains plus the
// machinery to retarget named fields from grid axes.
struct ModelSpec {
    enum class Kind { Tlfi, Debhm };

    Kind kind = Kind::Tlfi;
    TlfiParams tlfi;
    DebhmParams debhm;

    int n_sites() const { return kind == Kind::Tlfi ? tlfi.n_sites : debhm.n_sites; }

    // Particle-number sector for ground-state solvers; empty for TLFI.
    std::optional<int> sector() const {
        if (kind == Kind::Debhm) return debhm.resolved_filling();
        return std::nullopt;
    }

    std::vector<std::string> field_names() const;
    // Throws std::invalid_argument for unknown fields.
    void set_field(const std::string& name, double value);
    double get_field(const std::string& name) const;

    // Copy with both grid axes applied.
    ModelSpec at(const GridSpec& grid, int i, int j) const;

    PauliHamiltonian build() const;

    std::string kind_name() const { return kind == Kind::Tlfi ? "tlfi" : "debhm"; }

    // Default sweep window for each model.
    GridSpec default_grid() const;
};

}  // namespace vqad
