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

#include "vqad/noise.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

#include "vqad/rng.hpp"

namespace vqad {

namespace {

void apply_random_single_pauli(StateVector& state, int site, std::mt19937_64& rng) {
    static const std::vector<double> no_params;
    switch (rng() % 3) {
        case 0: apply_gate(state, Gate::pauli_x(site), no_params); break;
        case 1: apply_gate(state, Gate::pauli_y(site), no_params); break;
        default: apply_gate(state, Gate::pauli_z(site), no_params); break;
    }
}

void apply_random_two_pauli(StateVector& state, int a, int b, std::mt19937_64& rng) {
    static const std::vector<double> no_params;
    // 1..15 encodes (P_a, P_b) with I=0, X=1, Y=2, Z=3, skipping (I, I).
    const std::uint64_t code = rng() % 15 + 1;
    const int pa = static_cast<int>(code & 3);
    const int pb = static_cast<int>(code >> 2);
    const auto apply_one = [&](int p, int site) {
        if (p == 1) apply_gate(state, Gate::pauli_x(site), no_params);
        else if (p == 2) apply_gate(state, Gate::pauli_y(site), no_params);
        else if (p == 3) apply_gate(state, Gate::pauli_z(site), no_params);
    };
    apply_one(pa, a);
    apply_one(pb, b);
}

std::uint64_t draw_basis_label(const StateVector& state, double u) {
    double acc = 0.0;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        acc += std::norm(state.amplitudes[b]);
        if (u < acc) return b;
    }
    return dim - 1;
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

void NoiseModel::validate() const {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    for (const auto& [p01, p10] : readout) {
        check_probability(p01, "readout flip probability");
        check_probability(p10, "readout flip probability");
    }
}

bool NoiseModel::has_readout() const {
    for (const auto& [p01, p10] : readout)
        if (p01 > 0.0 || p10 > 0.0) return true;
    return false;
}

std::pair<double, double> NoiseModel::readout_for_site(int site, int n_qubits) const {
    if (readout.empty()) return {0.0, 0.0};
    if (readout.size() == 1) return readout[0];
    if (static_cast<int>(readout.size()) != n_qubits)
        throw std::invalid_argument("readout table must have one entry, or one per site");
    if (site < 1 || site > n_qubits) throw std::invalid_argument("site out of range");
    return readout[static_cast<std::size_t>(site) - 1];
}

ShotHistogram noisy_execute(const StateVector& initial, const ParamCircuit& circuit,
                            const std::vector<double>& params, const std::vector<int>& qubits,
                            std::int64_t n_shots, const NoiseModel& noise, std::uint64_t seed) {
    noise.validate();
    circuit.validate();
    if (circuit.n_qubits != initial.n_qubits)
        throw std::invalid_argument("circuit register size does not match the state");
    if (static_cast<int>(params.size()) != circuit.n_params)
        throw std::invalid_argument("parameter count mismatch");
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
    // Validates the measured-qubit list.
    (void)marginal_probabilities(initial, qubits);

    const int L = initial.n_qubits;
    std::vector<std::pair<double, double>> flips(qubits.size());
    for (std::size_t k = 0; k < qubits.size(); ++k)
        flips[k] = noise.readout_for_site(qubits[k], L);

    ShotHistogram hist;
    hist.measured_qubits = qubits;
    hist.n_shots = n_shots;

    std::string key(qubits.size(), '0');
    for (std::int64_t s = 0; s < n_shots; ++s) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        StateVector state = initial;
        for (const Gate& g : circuit.gates) {
            apply_gate(state, g, params);
            if (g.is_two_qubit()) {
                if (noise.p2 > 0.0 && unit(rng) < noise.p2)
                    apply_random_two_pauli(state, g.q1, g.q2, rng);
            } else {
                if (noise.p1 > 0.0 && unit(rng) < noise.p1)
                    apply_random_single_pauli(state, g.q1, rng);
            }
        }

        const std::uint64_t label = draw_basis_label(state, unit(rng));
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            int bit = StateVector::site_bit(label, qubits[k], L);
            const auto& [p01, p10] = flips[k];
            const double flip_p = bit == 0 ? p01 : p10;
            if (flip_p > 0.0 && unit(rng) < flip_p) bit ^= 1;
            key[k] = static_cast<char>('0' + bit);
        }
        ++hist.counts[key];
    }
    return hist;
}

namespace {

void check_trash_sites(const std::vector<int>& trash, int n_qubits) {
    if (trash.empty()) throw std::invalid_argument("empty trash register");
    if (trash.size() > 16) throw std::invalid_argument("trash register too large");
    for (std::size_t i = 0; i < trash.size(); ++i) {
        if (trash[i] < 1 || trash[i] > n_qubits)
            throw std::invalid_argument("trash site out of range");
        for (std::size_t k = 0; k < i; ++k)
            if (trash[k] == trash[i]) throw std::invalid_argument("duplicate trash site");
    }
}

}  // namespace

CalibrationMatrix build_calibration_matrix(const NoiseModel& noise,
                                           const std::vector<int>& trash, int n_qubits,
                                           std::int64_t n_shots, std::uint64_t seed) {
    noise.validate();
    check_trash_sites(trash, n_qubits);
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");

    const std::size_t m = trash.size();
    const std::size_t dim = 1ULL << m;
    CalibrationMatrix cal;
    cal.n_t = static_cast<int>(m);
    cal.matrix.assign(dim * dim, 0.0);

    // Preparation uses noiseless X gates, so the pre-readout outcome is the
    // prepared label itself; only readout flips are sampled.
    for (std::size_t col = 0; col < dim; ++col) {
        std::mt19937_64 rng(mix_seed(seed, col));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::int64_t s = 0; s < n_shots; ++s) {
            std::size_t row = 0;
            for (std::size_t k = 0; k < m; ++k) {
                int bit = static_cast<int>((col >> (m - 1 - k)) & 1ULL);
                const auto [p01, p10] = noise.readout_for_site(trash[k], n_qubits);
                const double flip_p = bit == 0 ? p01 : p10;
                if (flip_p > 0.0 && unit(rng) < flip_p) bit ^= 1;
                row = (row << 1) | static_cast<std::size_t>(bit);
            }
            cal.at(row, col) += 1.0;
        }
    }
    const double inv = 1.0 / static_cast<double>(n_shots);
    for (double& x : cal.matrix) x *= inv;
    return cal;
}

CalibrationMatrix exact_calibration_matrix(const NoiseModel& noise,
                                           const std::vector<int>& trash, int n_qubits) {
    noise.validate();
    check_trash_sites(trash, n_qubits);

    const std::size_t m = trash.size();
    const std::size_t dim = 1ULL << m;
    CalibrationMatrix cal;
    cal.n_t = static_cast<int>(m);
    cal.matrix.assign(dim * dim, 0.0);

    for (std::size_t col = 0; col < dim; ++col) {
        for (std::size_t row = 0; row < dim; ++row) {
            double p = 1.0;
            for (std::size_t k = 0; k < m; ++k) {
                const int prep = static_cast<int>((col >> (m - 1 - k)) & 1ULL);
                const int read = static_cast<int>((row >> (m - 1 - k)) & 1ULL);
                const auto [p01, p10] = noise.readout_for_site(trash[k], n_qubits);
                if (prep == 0)
                    p *= read == 0 ? 1.0 - p01 : p01;
                else
                    p *= read == 1 ? 1.0 - p10 : p10;
            }
            cal.at(row, col) = p;
        }
    }
    return cal;
}

MitigationResult mitigate_counts(const ShotHistogram& raw, const CalibrationMatrix& cal) {
    const std::size_t m = raw.measured_qubits.size();
    if (static_cast<int>(m) != cal.n_t)
        throw std::invalid_argument("calibration matrix size does not match the histogram");
    if (raw.n_shots < 1) throw std::invalid_argument("histogram has no shots");
    const std::size_t dim = cal.dim();

    Eigen::VectorXd freq = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (const auto& [key, count] : raw.counts) {
        if (key.size() != m) throw std::invalid_argument("bitstring length mismatch");
        std::size_t idx = 0;
        for (char ch : key) {
            if (ch != '0' && ch != '1') throw std::invalid_argument("bad bitstring key");
            idx = (idx << 1) | static_cast<std::size_t>(ch - '0');
        }
        freq(static_cast<Eigen::Index>(idx)) +=
            static_cast<double>(count) / static_cast<double>(raw.n_shots);
    }

    Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cal.at(r, c);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e8)
        throw std::runtime_error("calibration matrix is ill-conditioned; "
                                 "collect more calibration shots");

    const Eigen::VectorXd p = svd.solve(freq);

    MitigationResult out;
    out.quasi_counts.resize(dim);
    out.probabilities.resize(dim);
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double v = p(static_cast<Eigen::Index>(i));
        out.quasi_counts[i] = v * static_cast<double>(raw.n_shots);
        const double clipped = v > 0.0 ? v : 0.0;
        out.probabilities[i] = clipped;
        total += clipped;
    }
    if (total <= 0.0) throw std::runtime_error("mitigation produced an empty distribution");
    for (double& x : out.probabilities) x /= total;
    return out;
}

}  // namespace vqad
