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

#include "oracles.hpp"
#include "vqad/noise.hpp"
#include "vqad/variational.hpp"

using vqad::CalibrationMatrix;
using vqad::NoiseModel;
using vqad::StateVector;

TEST_CASE("noise model validation and readout broadcast") {
    NoiseModel m;
    m.p1 = -0.1;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.p1 = 0.0;
    m.p2 = 1.5;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.p2 = 0.0;
    m.readout = {{0.2, 1.2}};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);

    m.readout = {{0.02, 0.03}};
    CHECK_NOTHROW(m.validate());
    CHECK(m.has_readout());
    CHECK(m.readout_for_site(1, 4) == std::pair<double, double>{0.02, 0.03});
    CHECK(m.readout_for_site(4, 4) == std::pair<double, double>{0.02, 0.03});

    m.readout = {{0.01, 0.01}, {0.05, 0.06}, {0.0, 0.0}, {0.1, 0.2}};
    CHECK(m.readout_for_site(2, 4) == std::pair<double, double>{0.05, 0.06});
    CHECK(m.readout_for_site(4, 4) == std::pair<double, double>{0.1, 0.2});
}

TEST_CASE("zero noise reproduces ideal statistics") {
    const auto syn = vqad::build_syndrome_circuit(4, {2, 3});
    const std::vector<double> params =
        vqad::seeded_uniform_params(static_cast<std::size_t>(syn.circuit.n_params), 3);
    const StateVector in = oracle::random_state(4, 17);

    NoiseModel none;
    const auto noisy =
        vqad::noisy_execute(in, syn.circuit, params, {2, 3}, 40000, none, 5);
    const double exact = vqad::cost_from_expectations(
        vqad::run_circuit(in, syn.circuit, params), {2, 3});
    CHECK(std::abs(vqad::cost_from_counts(noisy) - exact) < 0.02);
}

TEST_CASE("readout flips show up at the configured rates") {
    // Identity circuit on |00>: every observed 1 is a readout flip.
    vqad::ParamCircuit id;
    id.n_qubits = 2;
    id.n_params = 0;
    id.gates = {vqad::Gate::ry_fixed(1, 0.0), vqad::Gate::ry_fixed(2, 0.0)};

    NoiseModel m;
    m.readout = {{0.3, 0.1}};
    const auto hist =
        vqad::noisy_execute(StateVector::zero_state(2), id, {}, {1, 2}, 60000, m, 9);

    double ones_first = 0.0, ones_second = 0.0;
    for (const auto& [key, count] : hist.counts) {
        if (key[0] == '1') ones_first += static_cast<double>(count);
        if (key[1] == '1') ones_second += static_cast<double>(count);
    }
    CHECK(ones_first / 60000.0 == doctest::Approx(0.3).epsilon(0.05));
    CHECK(ones_second / 60000.0 == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("depolarizing noise drives marginals toward the mixed point") {
    // A single-qubit circuit under heavy gate noise cannot keep the register
    // clean, so the measured cost leaves zero.
    const auto syn = vqad::build_syndrome_circuit(4, {2, 3});
    const std::vector<double> zeros(static_cast<std::size_t>(syn.circuit.n_params), 0.0);

    NoiseModel strong;
    strong.p1 = 0.2;
    strong.p2 = 0.2;
    const auto hist = vqad::noisy_execute(StateVector::zero_state(4), syn.circuit, zeros,
                                          {2, 3}, 20000, strong, 4);
    const double cost = vqad::cost_from_counts(hist);
    CHECK(cost > 0.2);

    NoiseModel weak;
    weak.p1 = 0.002;
    weak.p2 = 0.002;
    const auto mild = vqad::noisy_execute(StateVector::zero_state(4), syn.circuit, zeros,
                                          {2, 3}, 20000, weak, 4);
    CHECK(vqad::cost_from_counts(mild) < cost / 3.0);
}

TEST_CASE("trajectory sampling is seed-deterministic") {
    const auto syn = vqad::build_syndrome_circuit(3, {2});
    const std::vector<double> params =
        vqad::seeded_uniform_params(static_cast<std::size_t>(syn.circuit.n_params), 1);
    NoiseModel m;
    m.p1 = 0.05;
    m.p2 = 0.05;
    m.readout = {{0.02, 0.02}};
    const auto h1 =
        vqad::noisy_execute(StateVector::zero_state(3), syn.circuit, params, {2}, 5000, m, 42);
    const auto h2 =
        vqad::noisy_execute(StateVector::zero_state(3), syn.circuit, params, {2}, 5000, m, 42);
    CHECK(h1.counts == h2.counts);
}

TEST_CASE("exact calibration is the tensor product of flip matrices") {
    NoiseModel m;
    m.readout = {{0.0, 0.0}, {0.1, 0.2}, {0.05, 0.0}, {0.0, 0.0}};
    const CalibrationMatrix cal = vqad::exact_calibration_matrix(m, {2, 3}, 4);
    REQUIRE(cal.n_t == 2);

    const auto flip = [](double p01, double p10) {
        oracle::RMat f(2, 2);
        // Column = prepared bit, row = read bit.
        f << 1.0 - p01, p10, p01, 1.0 - p10;
        return f;
    };
    oracle::RMat want(4, 4);
    const oracle::RMat a = flip(0.1, 0.2), b = flip(0.05, 0.0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            want(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);

    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(cal.at(r, c) == doctest::Approx(want(static_cast<int>(r),
                                                        static_cast<int>(c))));
}

TEST_CASE("sampled calibration columns are stochastic") {
    NoiseModel m;
    m.readout = {{0.04, 0.06}};
    const CalibrationMatrix cal = vqad::build_calibration_matrix(m, {3, 4}, 6, 20000, 12);
    REQUIRE(cal.n_t == 2);
    for (std::size_t c = 0; c < cal.dim(); ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < cal.dim(); ++r) {
            CHECK(cal.at(r, c) >= 0.0);
            sum += cal.at(r, c);
        }
        CHECK(sum == doctest::Approx(1.0));
    }

    const CalibrationMatrix exact = vqad::exact_calibration_matrix(m, {3, 4}, 6);
    for (std::size_t r = 0; r < cal.dim(); ++r)
        for (std::size_t c = 0; c < cal.dim(); ++c)
            CHECK(std::abs(cal.at(r, c) - exact.at(r, c)) < 0.02);
}

TEST_CASE("mitigation inverts a known confusion matrix") {
    NoiseModel m;
    m.readout = {{0.08, 0.03}};
    const CalibrationMatrix cal = vqad::exact_calibration_matrix(m, {1, 2}, 2);

    // Fabricate raw counts as cal * p_true scaled to integer shots.
    const std::vector<double> p_true{0.7, 0.1, 0.15, 0.05};
    std::vector<double> raw(4, 0.0);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) raw[r] += cal.at(r, c) * p_true[c] * 100000.0;

    vqad::ShotHistogram hist;
    hist.measured_qubits = {1, 2};
    hist.n_shots = 100000;
    const char* keys[4] = {"00", "01", "10", "11"};
    for (std::size_t r = 0; r < 4; ++r)
        hist.counts[keys[r]] = static_cast<std::int64_t>(std::llround(raw[r]));

    const auto out = vqad::mitigate_counts(hist, cal);
    REQUIRE(out.probabilities.size() == 4);
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(out.probabilities[k] == doctest::Approx(p_true[k]).epsilon(1e-3));
        CHECK(out.probabilities[k] >= 0.0);
        total += out.probabilities[k];
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("mitigation clips infeasible solutions but keeps the quasi counts") {
    NoiseModel m;
    m.readout = {{0.25, 0.25}};
    const CalibrationMatrix cal = vqad::exact_calibration_matrix(m, {1}, 1);

    // All shots on one outcome is not reachable by the forward map, so the
    // inverse overshoots past the simplex.
    vqad::ShotHistogram hist;
    hist.measured_qubits = {1};
    hist.n_shots = 1000;
    hist.counts = {{"0", 1000}};

    const auto out = vqad::mitigate_counts(hist, cal);
    CHECK(out.quasi_counts[1] < 0.0);
    CHECK(out.probabilities[0] == doctest::Approx(1.0));
    CHECK(out.probabilities[1] == doctest::Approx(0.0));
}

TEST_CASE("mitigation rejects an unusable calibration") {
    NoiseModel m;
    m.readout = {{0.5, 0.5}};  // rank-deficient confusion
    const CalibrationMatrix cal = vqad::exact_calibration_matrix(m, {1}, 1);
    vqad::ShotHistogram hist;
    hist.measured_qubits = {1};
    hist.n_shots = 10;
    hist.counts = {{"0", 10}};
    CHECK_THROWS(vqad::mitigate_counts(hist, cal));
}

TEST_CASE("mitigation lifts the all-clear probability under readout noise") {
    // Trained compression: |0000> through an identity-angle circuit stays
    // at "00" on the trash pair up to readout flips.
    vqad::ParamCircuit id;
    id.n_qubits = 4;
    id.n_params = 0;
    id.gates = {vqad::Gate::ry_fixed(2, 0.0), vqad::Gate::ry_fixed(3, 0.0)};

    NoiseModel m;
    m.readout = {{0.02, 0.02}};
    const CalibrationMatrix cal = vqad::exact_calibration_matrix(m, {2, 3}, 4);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto hist = vqad::noisy_execute(StateVector::zero_state(4), id, {}, {2, 3},
                                              4096, m, seed);
        const double raw =
            static_cast<double>(hist.counts.count("00") ? hist.counts.at("00") : 0) / 4096.0;
        const auto out = vqad::mitigate_counts(hist, cal);
        CHECK(out.probabilities[0] > raw);
    }
}
