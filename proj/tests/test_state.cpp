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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "oracles.hpp"
#include "vqad/state.hpp"

using vqad::Gate;
using vqad::ParamCircuit;
using vqad::StateVector;

namespace {

double max_amp_diff(const StateVector& s, const oracle::Vec& v) {
    double m = 0.0;
    for (std::uint64_t b = 0; b < s.dim(); ++b)
        m = std::max(m, std::abs(s.amplitudes[b] - v(static_cast<Eigen::Index>(b))));
    return m;
}

}  // namespace

TEST_CASE("basis construction and bit convention") {
    const StateVector z = StateVector::zero_state(3);
    CHECK(z.dim() == 8);
    CHECK(z.amplitudes[0] == vqad::cplx{1.0, 0.0});

    // |10110>: site 1 is the most significant bit.
    const StateVector s = StateVector::from_bitstring("10110");
    CHECK(s.n_qubits == 5);
    CHECK(s.amplitudes[0b10110] == vqad::cplx{1.0, 0.0});
    CHECK(StateVector::site_bit(0b10110, 1, 5) == 1);
    CHECK(StateVector::site_bit(0b10110, 2, 5) == 0);
    CHECK(StateVector::site_bit(0b10110, 5, 5) == 0);

    const StateVector b = StateVector::basis_state(4, 0b0110);
    CHECK(b.amplitudes[6] == vqad::cplx{1.0, 0.0});
    CHECK(b.norm() == doctest::Approx(1.0));
}

TEST_CASE("inject_state norm policy") {
    std::vector<vqad::cplx> half{{0.5, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(vqad::inject_state(half), std::invalid_argument);
    const StateVector fixed = vqad::inject_state(half, true);
    CHECK(fixed.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(vqad::inject_state({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("single-qubit gates match dense embeddings") {
    const int L = 4;
    for (int site = 1; site <= L; ++site) {
        StateVector s = oracle::random_state(L, 100 + static_cast<std::uint64_t>(site));
        const oracle::Vec before = oracle::to_eigen(s);

        const double theta = 0.3 + 0.2 * site;
        StateVector rotated = s;
        vqad::apply_gate(rotated, Gate::ry_fixed(site, theta), {});
        CHECK(max_amp_diff(rotated, oracle::embed1(oracle::ry(theta), site, L) * before) < 1e-12);

        for (char p : {'X', 'Y', 'Z'}) {
            StateVector hit = s;
            const Gate g = p == 'X'   ? Gate::pauli_x(site)
                           : p == 'Y' ? Gate::pauli_y(site)
                                      : Gate::pauli_z(site);
            vqad::apply_gate(hit, g, {});
            CHECK(max_amp_diff(hit, oracle::embed1(oracle::pauli(p), site, L) * before) < 1e-12);
        }
    }
}

TEST_CASE("cz matches dense embedding and is symmetric") {
    const int L = 4;
    StateVector s = oracle::random_state(L, 7);
    const oracle::Vec before = oracle::to_eigen(s);
    StateVector ab = s;
    vqad::apply_gate(ab, Gate::cz(2, 4), {});
    CHECK(max_amp_diff(ab, oracle::cz(2, 4, L) * before) < 1e-12);

    StateVector ba = s;
    vqad::apply_gate(ba, Gate::cz(4, 2), {});
    for (std::uint64_t b = 0; b < s.dim(); ++b)
        CHECK(std::abs(ab.amplitudes[b] - ba.amplitudes[b]) < 1e-14);
}

TEST_CASE("run_circuit applies gates in order with slot lookup") {
    const int L = 3;
    ParamCircuit c;
    c.n_qubits = L;
    c.n_params = 2;
    c.gates = {Gate::ry_slot(1, 0), Gate::cz(1, 2), Gate::ry_slot(3, 1),
               Gate::ry_fixed(2, 0.4)};
    c.validate();

    const std::vector<double> params{0.7, -1.1};
    const StateVector got = vqad::run_circuit(StateVector::zero_state(L), c, params);

    oracle::Vec v = oracle::Vec::Zero(8);
    v(0) = 1.0;
    v = oracle::embed1(oracle::ry(0.7), 1, L) * v;
    v = oracle::cz(1, 2, L) * v;
    v = oracle::embed1(oracle::ry(-1.1), 3, L) * v;
    v = oracle::embed1(oracle::ry(0.4), 2, L) * v;
    CHECK(max_amp_diff(got, v) < 1e-12);
}

TEST_CASE("circuit validation rejects broken wiring") {
    ParamCircuit c;
    c.n_qubits = 2;
    c.n_params = 1;
    c.gates = {Gate::ry_slot(1, 0), Gate::ry_slot(2, 3)};  // slot 3 out of range
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.gates = {Gate::ry_fixed(1, 0.1)};  // slot 0 never referenced
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.n_params = 0;
    c.gates = {Gate::ry_fixed(3, 0.1)};  // site off the register
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.gates = {Gate::cz(1, 1)};  // degenerate pair
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("norm preserved across random circuits") {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> angle(-3.14, 3.14);
    for (int trial = 0; trial < 20; ++trial) {
        const int L = 2 + static_cast<int>(rng() % 4);
        StateVector s = oracle::random_state(L, rng());
        for (int g = 0; g < 30; ++g) {
            const int site = 1 + static_cast<int>(rng() % L);
            if (L > 1 && (rng() & 1ULL)) {
                int other = 1 + static_cast<int>(rng() % L);
                if (other == site) other = site % L + 1;
                vqad::apply_gate(s, Gate::cz(site, other), {});
            } else {
                vqad::apply_gate(s, Gate::ry_fixed(site, angle(rng)), {});
            }
        }
        CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("marginal probabilities agree with direct summation") {
    const int L = 5;
    const StateVector s = oracle::random_state(L, 42);
    const std::vector<int> qubits{4, 2};  // listed order sets outcome bit order
    const std::vector<double> marg = vqad::marginal_probabilities(s, qubits);
    REQUIRE(marg.size() == 4);

    std::vector<double> expect(4, 0.0);
    for (std::uint64_t b = 0; b < s.dim(); ++b) {
        const int outcome = (StateVector::site_bit(b, 4, L) << 1) | StateVector::site_bit(b, 2, L);
        expect[static_cast<std::size_t>(outcome)] += std::norm(s.amplitudes[b]);
    }
    for (int k = 0; k < 4; ++k) CHECK(marg[static_cast<std::size_t>(k)] ==
                                      doctest::Approx(expect[static_cast<std::size_t>(k)]));
    CHECK(std::accumulate(marg.begin(), marg.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("sampling is seed-deterministic and unbiased") {
    const StateVector s = oracle::random_state(4, 9);
    const std::vector<int> qubits{1, 3};
    const auto h1 = vqad::sample_measurements(s, qubits, 50000, 77);
    const auto h2 = vqad::sample_measurements(s, qubits, 50000, 77);
    CHECK(h1.counts == h2.counts);
    CHECK(h1.n_shots == 50000);
    CHECK(h1.measured_qubits == qubits);

    const auto h3 = vqad::sample_measurements(s, qubits, 50000, 78);
    CHECK(h3.counts != h1.counts);

    const std::vector<double> marg = vqad::marginal_probabilities(s, qubits);
    for (const auto& [key, count] : h1.counts) {
        REQUIRE(key.size() == 2);
        const int idx = (key[0] - '0') * 2 + (key[1] - '0');
        const double p = marg[static_cast<std::size_t>(idx)];
        const double sigma = std::sqrt(p * (1.0 - p) / 50000.0);
        CHECK(std::abs(static_cast<double>(count) / 50000.0 - p) < 5.0 * sigma + 1e-4);
    }
}

TEST_CASE("schmidt spectrum matches an SVD oracle") {
    const StateVector bell = vqad::inject_state(
        {{std::sqrt(0.5), 0.0}, {0.0, 0.0}, {0.0, 0.0}, {std::sqrt(0.5), 0.0}});
    const auto spec = vqad::schmidt_spectrum(bell, 1);
    REQUIRE(spec.squared_coefficients.size() == 2);
    CHECK(spec.squared_coefficients[0] == doctest::Approx(0.5));
    CHECK(spec.squared_coefficients[1] == doctest::Approx(0.5));

    const StateVector prod = StateVector::from_bitstring("0110");
    const auto pspec = vqad::schmidt_spectrum(prod, 2);
    REQUIRE(pspec.squared_coefficients.size() == 1);
    CHECK(pspec.squared_coefficients[0] == doctest::Approx(1.0));

    const StateVector s = oracle::random_state(6, 13);
    for (int cut : {1, 3, 5}) {
        const auto got = vqad::schmidt_spectrum(s, cut);
        const auto want = oracle::schmidt_squared(s, cut);
        REQUIRE(got.squared_coefficients.size() == want.size());
        double total = 0.0;
        for (std::size_t k = 0; k < want.size(); ++k) {
            CHECK(got.squared_coefficients[k] == doctest::Approx(want[k]).epsilon(1e-9));
            total += got.squared_coefficients[k];
        }
        CHECK(total == doctest::Approx(1.0));
        CHECK(std::is_sorted(got.squared_coefficients.rbegin(),
                             got.squared_coefficients.rend()));
    }
}

TEST_CASE("binary state round trip") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "vqad_state_roundtrip.bin";
    const StateVector s = oracle::random_state(5, 21);
    vqad::save_state_binary(s, path.string());
    const StateVector back = vqad::load_state_binary(path.string());
    CHECK(back.n_qubits == s.n_qubits);
    CHECK(max_amp_diff(back, oracle::to_eigen(s)) == 0.0);
    fs::remove(path);
}

TEST_CASE("register size limits are enforced") {
    CHECK_THROWS_AS(StateVector::zero_state(vqad::kMaxStateQubits + 1), std::invalid_argument);
    CHECK_NOTHROW(StateVector::zero_state(vqad::kMaxStateQubits));
}
