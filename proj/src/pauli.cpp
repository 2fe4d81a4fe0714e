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

#include "vqad/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqad {

PauliAction compile_pauli_action(const PauliString& p, int n_qubits) {
    PauliAction c;
    c.coefficient = p.coefficient;
    int n_y = 0;
    for (const auto& [site, letter] : p.letters) {
        if (site < 1 || site > n_qubits)
            throw std::invalid_argument("Pauli letter on site " + std::to_string(site) +
                                        " outside register of " + std::to_string(n_qubits));
        const std::uint64_t m = 1ULL << (n_qubits - site);
        switch (letter) {
            case 'X':
                c.flip_mask |= m;
                break;
            case 'Y':
                c.flip_mask |= m;
                c.sign_mask |= m;
                ++n_y;
                break;
            case 'Z':
                c.sign_mask |= m;
                break;
            default:
                throw std::invalid_argument("Pauli letter must be one of X, Y, Z");
        }
    }
    static const cplx i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    c.prefactor = i_powers[n_y % 4];
    return c;
}

double expectation_pauli_string(const StateVector& state, const PauliString& p) {
    const PauliAction c = compile_pauli_action(p, state.n_qubits);
    const std::uint64_t dim = state.dim();
    cplx acc(0.0, 0.0);
    for (std::uint64_t b = 0; b < dim; ++b) {
        const cplx& amp = state.amplitudes[b];
        if (amp == cplx(0.0, 0.0)) continue;
        const double sign = (std::popcount(b & c.sign_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(state.amplitudes[b ^ c.flip_mask]) * (sign * amp);
    }
    acc *= c.prefactor * c.coefficient;
    return acc.real();
}

void accumulate_pauli_apply(const PauliString& p, const StateVector& in,
                            std::vector<cplx>& out) {
    if (out.size() != in.dim())
        throw std::invalid_argument("accumulator size mismatch");
    const PauliAction c = compile_pauli_action(p, in.n_qubits);
    const cplx scale = c.prefactor * c.coefficient;
    const std::uint64_t dim = in.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        const cplx& amp = in.amplitudes[b];
        if (amp == cplx(0.0, 0.0)) continue;
        const double sign = (std::popcount(b & c.sign_mask) & 1) ? -1.0 : 1.0;
        out[b ^ c.flip_mask] += scale * sign * amp;
    }
}

StateVector apply_hamiltonian(const PauliHamiltonian& h, const StateVector& in) {
    if (h.n_qubits != in.n_qubits)
        throw std::invalid_argument("Hamiltonian register size does not match the state");
    StateVector out;
    out.n_qubits = in.n_qubits;
    out.amplitudes.assign(in.dim(), cplx(0.0, 0.0));
    for (const PauliString& term : h.terms) accumulate_pauli_apply(term, in, out.amplitudes);
    return out;
}

double energy_expectation(const StateVector& state, const PauliHamiltonian& h) {
    if (h.n_qubits != state.n_qubits)
        throw std::invalid_argument("Hamiltonian register size does not match the state");
    double e = 0.0;
    for (const PauliString& term : h.terms) e += expectation_pauli_string(state, term);
    return e;
}

double coefficient_l1_norm(const PauliHamiltonian& h) {
    double acc = 0.0;
    for (const PauliString& t : h.terms) acc += std::abs(t.coefficient);
    return acc;
}

bool is_real_hamiltonian(const PauliHamiltonian& h) {
    for (const PauliString& t : h.terms) {
        int n_y = 0;
        for (const auto& [site, letter] : t.letters)
            if (letter == 'Y') ++n_y;
        if (n_y % 2 != 0) return false;
    }
    return true;
}

PauliHamiltonian build_tlfi(const TlfiParams& p) {
    if (p.n_sites < 2) throw std::invalid_argument("TLFI needs at least 2 sites");
    PauliHamiltonian h;
    h.n_qubits = p.n_sites;

    const int n_bonds = p.boundary == Boundary::Periodic ? p.n_sites : p.n_sites - 1;
    if (p.coupling != 0.0) {
        for (int i = 1; i <= n_bonds; ++i) {
            const int j = i % p.n_sites + 1;
            PauliString t;
            t.coefficient = p.coupling;
            t.letters[i] = 'Z';
            t.letters[j] = 'Z';
            h.terms.push_back(std::move(t));
        }
    }
    if (p.g_x != 0.0) {
        for (int i = 1; i <= p.n_sites; ++i) {
            PauliString t;
            t.coefficient = -p.g_x;
            t.letters[i] = 'X';
            h.terms.push_back(std::move(t));
        }
    }
    if (p.g_z != 0.0) {
        for (int i = 1; i <= p.n_sites; ++i) {
            PauliString t;
            t.coefficient = -p.g_z;
            t.letters[i] = 'Z';
            h.terms.push_back(std::move(t));
        }
    }
    return h;
}

PauliHamiltonian build_debhm_spin(const DebhmParams& p) {
    if (p.n_sites < 2) throw std::invalid_argument("DEBHM needs at least 2 sites");
    if (p.resolved_filling() < 0 || p.resolved_filling() > p.n_sites)
        throw std::invalid_argument("filling outside 0..n_sites");
    PauliHamiltonian h;
    h.n_qubits = p.n_sites;

    for (int i = 1; i < p.n_sites; ++i) {
        // Bond index is 1-based in the alternation (-1)^i.
        const double j_bond = p.hopping + p.delta_j * ((i % 2 == 0) ? 1.0 : -1.0);
        if (j_bond != 0.0) {
            PauliString xx;
            xx.coefficient = -0.5 * j_bond;
            xx.letters[i] = 'X';
            xx.letters[i + 1] = 'X';
            h.terms.push_back(std::move(xx));
            PauliString yy;
            yy.coefficient = -0.5 * j_bond;
            yy.letters[i] = 'Y';
            yy.letters[i + 1] = 'Y';
            h.terms.push_back(std::move(yy));
        }
    }

    if (p.repulsion != 0.0) {
        const double v4 = 0.25 * p.repulsion;
        std::vector<double> z_coeff(static_cast<std::size_t>(p.n_sites) + 1, 0.0);
        for (int i = 1; i < p.n_sites; ++i) {
            PauliString zz;
            zz.coefficient = v4;
            zz.letters[i] = 'Z';
            zz.letters[i + 1] = 'Z';
            h.terms.push_back(std::move(zz));
            z_coeff[static_cast<std::size_t>(i)] -= v4;
            z_coeff[static_cast<std::size_t>(i) + 1] -= v4;
        }
        for (int i = 1; i <= p.n_sites; ++i) {
            if (z_coeff[static_cast<std::size_t>(i)] == 0.0) continue;
            PauliString z;
            z.coefficient = z_coeff[static_cast<std::size_t>(i)];
            z.letters[i] = 'Z';
            h.terms.push_back(std::move(z));
        }
        PauliString constant;
        constant.coefficient = v4 * (p.n_sites - 1);
        h.terms.push_back(std::move(constant));
    }
    return h;
}

}  // namespace vqad
