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

#include "vqad/state.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace vqad {

namespace {

void check_register_size(int n_qubits, int limit) {
    if (n_qubits < 1 || n_qubits > limit)
        throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                    " outside supported range 1.." + std::to_string(limit));
}

std::uint64_t site_stride(int n_qubits, int site) {
    return 1ULL << (n_qubits - site);
}

void apply_ry(std::vector<cplx>& a, int n_qubits, int site, double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::uint64_t stride = site_stride(n_qubits, site);
    const std::uint64_t dim = a.size();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const cplx a0 = a[i];
            const cplx a1 = a[i + stride];
            a[i] = c * a0 - s * a1;
            a[i + stride] = s * a0 + c * a1;
        }
    }
}

void apply_cz(std::vector<cplx>& a, int n_qubits, int q1, int q2) {
    const std::uint64_t m = site_stride(n_qubits, q1) | site_stride(n_qubits, q2);
    const std::uint64_t dim = a.size();
    for (std::uint64_t b = 0; b < dim; ++b)
        if ((b & m) == m) a[b] = -a[b];
}

void apply_pauli_x(std::vector<cplx>& a, int n_qubits, int site) {
    const std::uint64_t stride = site_stride(n_qubits, site);
    const std::uint64_t dim = a.size();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
        for (std::uint64_t i = base; i < base + stride; ++i) std::swap(a[i], a[i + stride]);
}

void apply_pauli_y(std::vector<cplx>& a, int n_qubits, int site) {
    const cplx im(0.0, 1.0);
    const std::uint64_t stride = site_stride(n_qubits, site);
    const std::uint64_t dim = a.size();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const cplx a0 = a[i];
            const cplx a1 = a[i + stride];
            a[i] = -im * a1;
            a[i + stride] = im * a0;
        }
}

void apply_pauli_z(std::vector<cplx>& a, int n_qubits, int site) {
    const std::uint64_t m = site_stride(n_qubits, site);
    const std::uint64_t dim = a.size();
    for (std::uint64_t b = 0; b < dim; ++b)
        if (b & m) a[b] = -a[b];
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
    return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t basis_index) {
    check_register_size(n_qubits, kMaxStateQubits);
    if (basis_index >= (1ULL << n_qubits))
        throw std::invalid_argument("basis index out of range");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(1ULL << n_qubits, cplx(0.0, 0.0));
    s.amplitudes[basis_index] = cplx(1.0, 0.0);
    return s;
}

StateVector StateVector::from_bitstring(const std::string& bits) {
    if (bits.empty()) throw std::invalid_argument("empty bitstring");
    std::uint64_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must be 0/1");
        index = (index << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return basis_state(static_cast<int>(bits.size()), index);
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cplx& a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

void StateVector::renormalize() {
    const double n = norm();
    if (n <= 0.0) throw std::runtime_error("cannot renormalize a zero state");
    const double inv = 1.0 / n;
    for (cplx& a : amplitudes) a *= inv;
}

StateVector inject_state(std::vector<cplx> amplitudes, bool renormalize) {
    const std::uint64_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
    int n_qubits = 0;
    while ((1ULL << n_qubits) < dim) ++n_qubits;
    check_register_size(n_qubits, kMaxStateQubits);

    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes = std::move(amplitudes);
    const double n = s.norm();
    if (!renormalize && std::abs(n - 1.0) > 1e-8)
        throw std::invalid_argument("state norm deviates from 1 by more than 1e-8; "
                                    "pass renormalize=true to accept it");
    if (n <= 0.0) throw std::invalid_argument("cannot inject a zero vector");
    s.renormalize();
    return s;
}

Gate Gate::ry_fixed(int site, double angle) {
    Gate g;
    g.kind = Kind::Ry;
    g.q1 = site;
    g.angle = angle;
    g.param = -1;
    return g;
}

Gate Gate::ry_slot(int site, int slot) {
    Gate g;
    g.kind = Kind::Ry;
    g.q1 = site;
    g.param = slot;
    return g;
}

Gate Gate::cz(int a, int b) {
    Gate g;
    g.kind = Kind::Cz;
    g.q1 = a;
    g.q2 = b;
    return g;
}

Gate Gate::pauli_x(int site) {
    Gate g;
    g.kind = Kind::PauliX;
    g.q1 = site;
    return g;
}

Gate Gate::pauli_y(int site) {
    Gate g;
    g.kind = Kind::PauliY;
    g.q1 = site;
    return g;
}

Gate Gate::pauli_z(int site) {
    Gate g;
    g.kind = Kind::PauliZ;
    g.q1 = site;
    return g;
}

void ParamCircuit::validate() const {
    check_register_size(n_qubits, kMaxCircuitQubits);
    if (n_params < 0) throw std::invalid_argument("negative parameter count");
    std::vector<bool> seen(static_cast<std::size_t>(n_params), false);
    for (const Gate& g : gates) {
        if (g.q1 < 1 || g.q1 > n_qubits)
            throw std::invalid_argument("gate site out of range");
        if (g.kind == Gate::Kind::Cz) {
            if (g.q2 < 1 || g.q2 > n_qubits)
                throw std::invalid_argument("gate site out of range");
            if (g.q2 == g.q1) throw std::invalid_argument("CZ needs two distinct sites");
        }
        if (g.kind == Gate::Kind::Ry && g.param >= 0) {
            if (g.param >= n_params)
                throw std::invalid_argument("parameter slot out of range");
            seen[static_cast<std::size_t>(g.param)] = true;
        }
    }
    for (int i = 0; i < n_params; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw std::invalid_argument("parameter slot " + std::to_string(i) +
                                        " is never referenced");
}

void apply_gate(StateVector& state, const Gate& gate, const std::vector<double>& params) {
    switch (gate.kind) {
        case Gate::Kind::Ry: {
            const double theta =
                gate.param >= 0 ? params[static_cast<std::size_t>(gate.param)] : gate.angle;
            apply_ry(state.amplitudes, state.n_qubits, gate.q1, theta);
            break;
        }
        case Gate::Kind::Cz:
            apply_cz(state.amplitudes, state.n_qubits, gate.q1, gate.q2);
            break;
        case Gate::Kind::PauliX:
            apply_pauli_x(state.amplitudes, state.n_qubits, gate.q1);
            break;
        case Gate::Kind::PauliY:
            apply_pauli_y(state.amplitudes, state.n_qubits, gate.q1);
            break;
        case Gate::Kind::PauliZ:
            apply_pauli_z(state.amplitudes, state.n_qubits, gate.q1);
            break;
    }
}

StateVector run_circuit(const StateVector& initial, const ParamCircuit& circuit,
                        const std::vector<double>& params) {
    circuit.validate();
    if (circuit.n_qubits != initial.n_qubits)
        throw std::invalid_argument("circuit register size does not match the state");
    if (static_cast<int>(params.size()) != circuit.n_params)
        throw std::invalid_argument("expected " + std::to_string(circuit.n_params) +
                                    " parameters, got " + std::to_string(params.size()));
    StateVector state = initial;
    for (const Gate& g : circuit.gates) apply_gate(state, g, params);
    return state;
}

static void check_measured_qubits(const StateVector& state, const std::vector<int>& qubits) {
    if (qubits.empty()) throw std::invalid_argument("no qubits to measure");
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > state.n_qubits)
            throw std::invalid_argument("measured qubit out of range");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw std::invalid_argument("duplicate measured qubit");
    }
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
    check_measured_qubits(state, qubits);
    const std::size_t m = qubits.size();
    std::vector<int> shifts(m);
    for (std::size_t k = 0; k < m; ++k) shifts[k] = state.n_qubits - qubits[k];
    std::vector<double> probs(1ULL << m, 0.0);
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        const double w = std::norm(state.amplitudes[b]);
        if (w == 0.0) continue;
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < m; ++k)
            out = (out << 1) | ((b >> shifts[k]) & 1ULL);
        probs[out] += w;
    }
    return probs;
}

ShotHistogram sample_measurements(const StateVector& state, const std::vector<int>& qubits,
                                  std::int64_t n_shots, std::uint64_t seed) {
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
    const std::vector<double> probs = marginal_probabilities(state, qubits);

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::int64_t> tally(probs.size(), 0);
    for (std::int64_t s = 0; s < n_shots; ++s) {
        const double u = unit(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        ++tally[static_cast<std::size_t>(it - cdf.begin())];
    }

    ShotHistogram hist;
    hist.measured_qubits = qubits;
    hist.n_shots = n_shots;
    const std::size_t m = qubits.size();
    for (std::size_t out = 0; out < tally.size(); ++out) {
        if (tally[out] == 0) continue;
        std::string key(m, '0');
        for (std::size_t k = 0; k < m; ++k)
            if ((out >> (m - 1 - k)) & 1ULL) key[k] = '1';
        hist.counts[key] = tally[out];
    }
    return hist;
}

SchmidtSpectrum schmidt_spectrum(const StateVector& state, int cut_position) {
    if (cut_position < 1 || cut_position >= state.n_qubits)
        throw std::invalid_argument("cut position must lie strictly inside the chain");
    const std::uint64_t rows = 1ULL << cut_position;
    const std::uint64_t cols = 1ULL << (state.n_qubits - cut_position);

    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                state.amplitudes[r * cols + c];

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();

    SchmidtSpectrum spec;
    spec.cut_position = cut_position;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double w = sv[i] * sv[i];
        if (w >= 1e-12) spec.squared_coefficients.push_back(w);
    }
    std::sort(spec.squared_coefficients.begin(), spec.squared_coefficients.end(),
              std::greater<double>());
    return spec;
}

void save_state_binary(const StateVector& state, const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "state files are little-endian");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const std::uint32_t n = static_cast<std::uint32_t>(state.n_qubits);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (const cplx& a : state.amplitudes) {
        const double re = a.real();
        const double im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

StateVector load_state_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || n < 1 || n > static_cast<std::uint32_t>(kMaxStateQubits))
        throw std::runtime_error("corrupt state file " + path);
    std::vector<cplx> amps(1ULL << n);
    for (cplx& a : amps) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        a = cplx(re, im);
    }
    if (!in) throw std::runtime_error("truncated state file " + path);
    StateVector s;
    s.n_qubits = static_cast<int>(n);
    s.amplitudes = std::move(amps);
    return s;
}

}  // namespace vqad
