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
#include <vector>

#include "vqad/state.hpp"

namespace vqad {

// Staggered magnetization sum_i (-1)^i <Z_i> / L with 1-based sites, so the
// Neel ket |1010...> scores +1.
double staggered_magnetization(const StateVector& state);

// Site occupations <n_i> = (1 - <Z_i>)/2, index i-1 holds site i.
struct DensityProfile {
    std::vector<double> occupation;
};

DensityProfile site_densities(const StateVector& state);

// Charge-density-wave order parameter over the first half of the chain:
// sum_{i=1..L/2} (-1)^i (<n_i> - mean_filling).  The half-chain window keeps
// the edge-pinned wave visible when the full-chain staggered sum cancels by
// reflection symmetry.  L must be even; mean_filling defaults to the profile
// average.
double cdw_order_parameter(const DensityProfile& profile,
                           std::optional<double> mean_filling = std::nullopt);

// Entanglement-spectrum degeneracy indicator sum_i (-1)^i alpha_i^2 over the
// descending squared Schmidt coefficients (index origin 0).  Pairwise
// degenerate spectra give 0; a single dominant level gives ~1.
double es_degeneracy(const SchmidtSpectrum& spectrum);

}  // namespace vqad
