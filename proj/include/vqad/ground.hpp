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
#include <vector>

#include "vqad/grid.hpp"
#include "vqad/model.hpp"
#include "vqad/pauli.hpp"
#include "vqad/state.hpp"

namespace vqad {

struct GroundSolution {
    double energy = 0.0;
    StateVector state;                // embedded in the full register
    std::optional<int> sector;        // particle number, when restricted
    double degeneracy_gap = 0.0;      // E1 - E0 as resolved by the solver
};

// Optional tiny staggered field -s * 1e-8 * sum_i (-1)^i Z_i used to pick the
// sign of the staggered magnetization inside a degenerate ordered ground
// space.  When the lowest two levels form a doublet split off from the rest
// of the spectrum (E1-E0 at most a fifth of E2-E1) the solver additionally
// rotates inside their span to the combination extremizing the staggered
// magnetization with the requested
// sign; a finite tunneling splitting would otherwise swamp the tiny field and
// always return the symmetric superposition.  The rotated state is not an
// eigenvector: its energy is the Rayleigh quotient, inside the pair interval.
enum class SymmetryBreak { None, Plus, Minus };

struct GroundOptions {
    std::optional<int> sector;          // restrict to fixed number of 1-bits
    SymmetryBreak symmetry_break = SymmetryBreak::None;
    bool force_iterative = false;       // testing hook: skip the dense path
};

// Basis labels with exactly `filling` set bits, ascending.
std::vector<std::uint64_t> sector_basis(int n_qubits, int filling);

// Lowest eigenpair of the Hamiltonian, dense for small problems and
// Lanczos with full reorthogonalization above that.  Full register up to
// 16 sites, sector-restricted up to 20.  The residual |Hv - Ev| is checked
// against 1e-6 times the coefficient bound on |H|.
GroundSolution exact_ground_state(const PauliHamiltonian& h, const GroundOptions& opts = {});

struct GridGroundStates {
    GridSpec grid;
    std::vector<GroundSolution> solutions;  // flat grid order

    const GroundSolution& at(int i, int j) const {
        return solutions[static_cast<std::size_t>(grid.flat_index(i, j))];
    }
};

// Ground state at every grid point of the retargeted model; points are
// independent, so they run on `workers` threads.
GridGroundStates grid_ground_states(const ModelSpec& model, const GridSpec& grid,
                                    const GroundOptions& opts = {}, int workers = 1);

}  // namespace vqad
