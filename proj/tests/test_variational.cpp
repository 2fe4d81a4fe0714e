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
#include <set>

#include "oracles.hpp"
#include "vqad/ground.hpp"
#include "vqad/variational.hpp"

using vqad::SpsaConfig;
using vqad::StateVector;
using vqad::TrainingRecord;

TEST_CASE("trash register defaults") {
    CHECK(vqad::default_trash_count(3) == 1);
    CHECK(vqad::default_trash_count(4) == 2);
    CHECK(vqad::default_trash_count(8) == 3);
    CHECK(vqad::default_trash_count(16) == 4);

    CHECK(vqad::default_trash_sites(8, 2) == std::vector<int>{4, 5});
    CHECK(vqad::default_trash_sites(8, 3) == std::vector<int>{4, 5, 6});
    CHECK(vqad::default_trash_sites(3, 1) == std::vector<int>{2});
    CHECK(vqad::default_trash_sites(16, 4) == std::vector<int>{7, 8, 9, 10});
}

TEST_CASE("compression circuit layout and schedule completeness") {
    for (int L : {4, 6, 8}) {
        for (int n_t = 1; n_t <= 3; ++n_t) {
            const std::vector<int> trash = vqad::default_trash_sites(L, n_t);
            const auto syn = vqad::build_syndrome_circuit(L, trash);
            CHECK(syn.circuit.n_params == n_t * L + n_t);
            CHECK_NOTHROW(syn.circuit.validate());
            CHECK_NOTHROW(syn.spec.validate());
            REQUIRE(static_cast<int>(syn.spec.entangling_schedule.size()) == n_t);

            // Every non-trash site appears once per layer; across all layers
            // each (non-trash, trash) pairing shows up exactly once.
            std::set<std::pair<int, int>> cross;
            for (const auto& layer : syn.spec.entangling_schedule) {
                std::set<int> sources;
                for (const auto& [a, b] : layer) {
                    const bool a_trash =
                        std::find(trash.begin(), trash.end(), a) != trash.end();
                    if (a_trash) continue;  // trash-trash chain links
                    CHECK(sources.insert(a).second);
                    CHECK(cross.insert({a, b}).second);
                }
                CHECK(static_cast<int>(sources.size()) == L - n_t);
            }
            CHECK(static_cast<int>(cross.size()) == (L - n_t) * n_t);
        }
    }
}

TEST_CASE("cost definitions on crafted states") {
    const std::vector<int> trash{2, 3};
    CHECK(vqad::cost_from_expectations(StateVector::from_bitstring("0000"), trash) ==
          doctest::Approx(0.0));
    CHECK(vqad::cost_from_expectations(StateVector::from_bitstring("0110"), trash) ==
          doctest::Approx(2.0));
    CHECK(vqad::cost_from_expectations(StateVector::from_bitstring("1001"), trash) ==
          doctest::Approx(0.0));

    // Ry(theta)|0> puts sin^2(theta/2) of the weight on |1>.
    StateVector s = StateVector::zero_state(4);
    vqad::apply_gate(s, vqad::Gate::ry_fixed(2, 0.8), {});
    CHECK(vqad::cost_from_expectations(s, trash) ==
          doctest::Approx(std::sin(0.4) * std::sin(0.4)));

    vqad::ShotHistogram hist;
    hist.measured_qubits = trash;
    hist.counts = {{"00", 70}, {"01", 20}, {"11", 10}};
    hist.n_shots = 100;
    CHECK(vqad::cost_from_counts(hist) == doctest::Approx(0.4));  // mean weight
}

TEST_CASE("counts estimator converges to the exact cost") {
    int hits = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        const StateVector s = oracle::random_state(5, 900 + static_cast<std::uint64_t>(t));
        const std::vector<int> trash{2, 4};
        const double exact = vqad::cost_from_expectations(s, trash);
        const double sampled = vqad::cost_from_counts(
            vqad::sample_measurements(s, trash, 20000, 31 + static_cast<std::uint64_t>(t)));
        if (std::abs(sampled - exact) <= 3.0 * std::sqrt(2.0 / 4.0 / 20000.0)) ++hits;
    }
    CHECK(hits >= trials - 1);
}

TEST_CASE("gain schedules follow their closed forms") {
    const double a = 0.4, c = 0.15, big_a = 10.0, alpha = 0.602, gamma = 0.101;
    for (int k = 0; k < 50; ++k) {
        CHECK(vqad::spsa_gain_a(k, a, big_a, alpha) ==
              doctest::Approx(a / std::pow(k + 1.0 + big_a, alpha)));
        CHECK(vqad::spsa_gain_c(k, c, gamma) == doctest::Approx(c / std::pow(k + 1.0, gamma)));
    }
}

TEST_CASE("spsa is deterministic per seed and records a full trace") {
    const auto quadratic = [](const std::vector<double>& x) {
        double f = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - 0.5 * static_cast<double>(i);
            f += d * d;
        }
        return f;
    };

    SpsaConfig cfg;
    cfg.max_iter = 120;
    cfg.seed = 99;
    const std::vector<double> init{2.0, -1.0, 0.7};

    const TrainingRecord r1 = vqad::spsa_minimize(quadratic, init, cfg);
    const TrainingRecord r2 = vqad::spsa_minimize(quadratic, init, cfg);
    CHECK(r1.cost_trace == r2.cost_trace);
    CHECK(r1.final_params == r2.final_params);

    cfg.seed = 100;
    const TrainingRecord r3 = vqad::spsa_minimize(quadratic, init, cfg);
    CHECK(r3.cost_trace != r1.cost_trace);

    // Trace holds the start point, one entry per iteration and the final
    // iterate; the reported cost is the trace minimum.
    CHECK(r1.cost_trace.size() == static_cast<std::size_t>(cfg.max_iter) + 2);
    CHECK(r1.converged_cost ==
          doctest::Approx(*std::min_element(r1.cost_trace.begin(), r1.cost_trace.end())));
    CHECK(r1.converged_cost < 0.05);

    // Auto-calibration spends 10 extra probes; the rest is 2 per iteration
    // plus the start and final evaluations.
    CHECK(r1.n_evaluations == 2 * 120 + 12);
    SpsaConfig fixed = cfg;
    fixed.a = 0.2;
    const TrainingRecord r4 = vqad::spsa_minimize(quadratic, init, fixed);
    CHECK(r4.n_evaluations == 2 * 120 + 2);
}

TEST_CASE("spsa aborts on non-finite costs with partial progress") {
    int calls = 0;
    const auto bad = [&calls](const std::vector<double>&) {
        ++calls;
        return calls > 5 ? std::nan("") : 1.0;
    };
    SpsaConfig cfg;
    cfg.max_iter = 50;
    cfg.a = 0.1;
    try {
        vqad::spsa_minimize(bad, {0.0, 0.0}, cfg);
        FAIL("expected SpsaAbort");
    } catch (const vqad::SpsaAbort& e) {
        CHECK(e.partial.n_evaluations == 6);
    }
}

TEST_CASE("spsa config validation") {
    SpsaConfig cfg;
    cfg.max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.max_iter = 10;
    cfg.c = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.c = 0.1;
    cfg.a = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("training a product state compresses to near zero") {
    // |0101> rotated onto the trash register is exactly expressible, so a
    // short run should flatten the cost.
    const StateVector input = StateVector::from_bitstring("010100");
    const std::vector<int> trash = vqad::default_trash_sites(6, 2);

    SpsaConfig cfg;
    cfg.max_iter = 400;
    cfg.seed = 5;
    const TrainingRecord rec =
        vqad::train_syndrome({input}, trash, cfg, vqad::ShotMode::exact());
    CHECK(rec.converged_cost < 0.01);
    CHECK(rec.final_params.size() == 2 * 6 + 2);

    const TrainingRecord again =
        vqad::train_syndrome({input}, trash, cfg, vqad::ShotMode::exact());
    CHECK(again.cost_trace == rec.cost_trace);
}

TEST_CASE("energy ansatz reaches a small chain's ground energy") {
    vqad::TlfiParams p;
    p.n_sites = 3;
    p.g_x = 0.9;
    p.g_z = 0.1;
    const auto h = build_tlfi(p);
    const double exact = vqad::exact_ground_state(h).energy;

    SpsaConfig cfg;
    cfg.max_iter = 600;
    cfg.seed = 11;
    const vqad::VqeResult out = vqad::run_vqe(h, cfg);
    CHECK(out.ansatz.n_params == 6);
    CHECK(out.record.converged_cost <= exact + 0.05 * std::abs(exact));
    CHECK(out.record.converged_cost >= exact - 1e-9);
    // The returned state is the ansatz at the best-seen parameters.
    CHECK(vqad::energy_expectation(out.state, h) ==
          doctest::Approx(out.record.converged_cost).epsilon(1e-12));
}

TEST_CASE("seeded starts are reproducible and bounded") {
    const auto p1 = vqad::seeded_uniform_params(40, 7);
    const auto p2 = vqad::seeded_uniform_params(40, 7);
    const auto p3 = vqad::seeded_uniform_params(40, 8);
    CHECK(p1 == p2);
    CHECK(p1 != p3);
    for (double x : p1) {
        CHECK(x >= -3.14159266);
        CHECK(x < 3.14159266);
    }
}

TEST_CASE("shot mode validation") {
    vqad::ShotMode bad;
    bad.n_shots = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    vqad::NoiseModel noise;
    noise.p1 = 0.01;
    vqad::ShotMode noisy_exact;
    noisy_exact.noise = noise;
    CHECK_THROWS_AS(noisy_exact.validate(), std::invalid_argument);

    CHECK_NOTHROW(vqad::ShotMode::noisy(100, 1, noise).validate());
}
