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

#include "vqad/model.hpp"

#include <stdexcept>

namespace vqad {

std::vector<std::string> ModelSpec::field_names() const {
    if (kind == Kind::Tlfi) return {"J", "g_x", "g_z"};
    return {"J", "dJ", "V"};
}

void ModelSpec::set_field(const std::string& name, double value) {
    if (kind == Kind::Tlfi) {
        if (name == "J") {
            tlfi.coupling = value;
            return;
        }
        if (name == "g_x") {
            tlfi.g_x = value;
            return;
        }
        if (name == "g_z") {
            tlfi.g_z = value;
            return;
        }
    } else {
        if (name == "J") {
            debhm.hopping = value;
            return;
        }
        if (name == "dJ") {
            debhm.delta_j = value;
            return;
        }
        if (name == "V") {
            debhm.repulsion = value;
            return;
        }
    }
    throw std::invalid_argument("model " + kind_name() + " has no field named " + name);
}

double ModelSpec::get_field(const std::string& name) const {
    if (kind == Kind::Tlfi) {
        if (name == "J") return tlfi.coupling;
        if (name == "g_x") return tlfi.g_x;
        if (name == "g_z") return tlfi.g_z;
    } else {
        if (name == "J") return debhm.hopping;
        if (name == "dJ") return debhm.delta_j;
        if (name == "V") return debhm.repulsion;
    }
    throw std::invalid_argument("model " + kind_name() + " has no field named " + name);
}

ModelSpec ModelSpec::at(const GridSpec& grid, int i, int j) const {
    ModelSpec m = *this;
    const auto [x, y] = grid.point(i, j);
    m.set_field(grid.axis1.name, x);
    m.set_field(grid.axis2.name, y);
    return m;
}

PauliHamiltonian ModelSpec::build() const {
    if (kind == Kind::Tlfi) return build_tlfi(tlfi);
    return build_debhm_spin(debhm);
}

GridSpec ModelSpec::default_grid() const {
    GridSpec g;
    if (kind == Kind::Tlfi) {
        g.axis1 = {"g_x", linspace(0.1, 2.0, 20)};
        g.axis2 = {"g_z", linspace(0.0, 1.0, 11)};
    } else {
        g.axis1 = {"dJ", linspace(-0.9, 0.9, 13)};
        g.axis2 = {"V", linspace(0.0, 4.0, 13)};
    }
    return g;
}

}  // namespace vqad
