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

#include "vqad/observables.hpp"

#include <stdexcept>

#include "vqad/pauli.hpp"

namespace vqad {

namespace {

std::vector<double> z_expectations(const StateVector& state) {
    std::vector<double> z(static_cast<std::size_t>(state.n_qubits));
    for (int i = 1; i <= state.n_qubits; ++i) {
        PauliString p;
        p.coefficient = 1.0;
        p.letters[i] = 'Z';
        z[static_cast<std::size_t>(i) - 1] = expectation_pauli_string(state, p);
    }
    return z;
}

}  // namespace

double staggered_magnetization(const StateVector& state) {
    const std::vector<double> z = z_expectations(state);
    double acc = 0.0;
    for (int i = 1; i <= state.n_qubits; ++i)
        acc += ((i % 2 == 0) ? 1.0 : -1.0) * z[static_cast<std::size_t>(i) - 1];
    return acc / state.n_qubits;
}

DensityProfile site_densities(const StateVector& state) {
    DensityProfile d;
    const std::vector<double> z = z_expectations(state);
    d.occupation.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) d.occupation[i] = 0.5 * (1.0 - z[i]);
    return d;
}

double cdw_order_parameter(const DensityProfile& profile, std::optional<double> mean_filling) {
    const int L = static_cast<int>(profile.occupation.size());
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("CDW order parameter needs an even chain length");
    double mean;
    if (mean_filling) {
        mean = *mean_filling;
    } else {
        mean = 0.0;
        for (double n : profile.occupation) mean += n;
        mean /= L;
    }
    double acc = 0.0;
    for (int i = 1; i <= L / 2; ++i)
        acc += ((i % 2 == 0) ? 1.0 : -1.0) *
               (profile.occupation[static_cast<std::size_t>(i) - 1] - mean);
    return acc;
}

double es_degeneracy(const SchmidtSpectrum& spectrum) {
    if (spectrum.squared_coefficients.empty())
        throw std::invalid_argument("empty Schmidt spectrum");
    double acc = 0.0;
    double sign = 1.0;  // index origin 0
    for (double w : spectrum.squared_coefficients) {
        acc += sign * w;
        sign = -sign;
    }
    return acc;
}

}  // namespace vqad
