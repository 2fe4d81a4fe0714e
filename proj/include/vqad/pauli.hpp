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

#include <map>
#include <vector>

#include "vqad/state.hpp"

namespace vqad {

// One product of single-site Paulis with a real coefficient.  An empty letter
// map is a constant (identity) term.
struct PauliString {
    double coefficient = 0.0;
    std::map<int, char> letters;  // 1-based site -> 'X' | 'Y' | 'Z'
};

struct PauliHamiltonian {
    int n_qubits = 0;
    std::vector<PauliString> terms;
};

// Basis-label action of one string:
//   P |b> = prefactor * (-1)^popcount(b & sign_mask) |b ^ flip_mask>
// with prefactor = i^(number of Y letters).
struct PauliAction {
    std::uint64_t flip_mask = 0;
    std::uint64_t sign_mask = 0;
    cplx prefactor{1.0, 0.0};
    double coefficient = 0.0;
};

PauliAction compile_pauli_action(const PauliString& p, int n_qubits);

// <psi|P|psi> including the coefficient, so the result lies in
// [-|coefficient|, |coefficient|].  The imaginary residue is discarded; for a
// normalized state it stays below 1e-10.
double expectation_pauli_string(const StateVector& state, const PauliString& p);

// out += coefficient * P |in>.  `out` must already have the right size.
void accumulate_pauli_apply(const PauliString& p, const StateVector& in,
                            std::vector<cplx>& out);

StateVector apply_hamiltonian(const PauliHamiltonian& h, const StateVector& in);

// Sum of per-term expectations; agrees with the dense quadratic form.
double energy_expectation(const StateVector& state, const PauliHamiltonian& h);

// Sum of |coefficient|, an upper bound on the operator norm.
double coefficient_l1_norm(const PauliHamiltonian& h);

// True when every term carries an even number of Y letters, i.e. the matrix
// is real in the computational basis.
bool is_real_hamiltonian(const PauliHamiltonian& h);

enum class Boundary { Periodic, Open };

// Ising chain in transverse and longitudinal fields:
//   H = J sum_i Z_i Z_{i+1} - g_x sum_i X_i - g_z sum_i Z_i
// with L bonds when periodic (Z_{L+1} = Z_1) and L-1 when open.
struct TlfiParams {
    int n_sites = 0;
    double coupling = 1.0;  // J
    double g_x = 0.0;
    double g_z = 0.0;
    Boundary boundary = Boundary::Periodic;
};

PauliHamiltonian build_tlfi(const TlfiParams& p);

// Dimerized chain of hardcore bosons with nearest-neighbour repulsion, open
// ends, written in spin language.  Bond i = 1..L-1 carries hopping
//   -(J + dJ * (-1)^i)/2 * (X_i X_{i+1} + Y_i Y_{i+1})
// and the repulsion V n_i n_{i+1} becomes
//   V/4 * (Z_i Z_{i+1} - Z_i - Z_{i+1}) + V/4
// with n_i = (1 - Z_i)/2.  The constant part is kept as an explicit
// identity term.
struct DebhmParams {
    int n_sites = 0;
    double hopping = 1.0;  // J
    double delta_j = 0.0;  // dJ
    double repulsion = 0.0;  // V
    int filling = -1;  // boson number; -1 = half filling (L/2)

    int resolved_filling() const { return filling >= 0 ? filling : n_sites / 2; }
};

PauliHamiltonian build_debhm_spin(const DebhmParams& p);

}  // namespace vqad
