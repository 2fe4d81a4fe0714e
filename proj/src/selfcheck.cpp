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

#include "vqad/selfcheck.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "vqad/ground.hpp"
#include "vqad/model.hpp"
#include "vqad/noise.hpp"
#include "vqad/observables.hpp"
#include "vqad/pauli.hpp"
#include "vqad/state.hpp"
#include "vqad/variational.hpp"

namespace vqad {
namespace {

StateVector random_state(int n_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<cplx> amps(1ULL << n_qubits);
    for (cplx& a : amps) a = cplx(gauss(rng), gauss(rng));
    return inject_state(std::move(amps), true);
}

struct Reporter {
    std::ostream& out;
    int failures = 0;

    void check(const char* name, bool ok, const std::string& detail = "") {
        out << (ok ? "ok:   " : "FAIL: ") << name;
        if (!ok && !detail.empty()) out << "  (" << detail << ")";
        out << '\n';
        if (!ok) ++failures;
    }
};

}  // namespace

int run_selfcheck(std::ostream& out) {
    Reporter rep{out};

    // Unitary gates keep the norm.
    {
        const int L = 6;
        const auto syndrome = build_syndrome_circuit(L, default_trash_sites(L, 2));
        const auto params = seeded_uniform_params(syndrome.circuit.n_params, 11);
        const StateVector in = random_state(L, 12);
        const StateVector out_state = run_circuit(in, syndrome.circuit, params);
        rep.check("circuit preserves the norm", std::abs(out_state.norm() - 1.0) < 1e-10);
    }

    // Both chain builders yield Hamiltonians real in the computational basis.
    {
        TlfiParams tlfi;
        tlfi.n_sites = 6;
        tlfi.g_x = 0.7;
        tlfi.g_z = 0.2;
        DebhmParams debhm;
        debhm.n_sites = 6;
        debhm.delta_j = 0.4;
        debhm.repulsion = 2.0;
        rep.check("chain Hamiltonians are real",
                  is_real_hamiltonian(build_tlfi(tlfi)) &&
                      is_real_hamiltonian(build_debhm_spin(debhm)));
    }

    // Sector-restricted ground states stay in their particle-number sector.
    {
        ModelSpec model;
        model.kind = ModelSpec::Kind::Debhm;
        model.debhm.n_sites = 6;
        model.debhm.delta_j = 0.3;
        model.debhm.repulsion = 1.5;
        GroundOptions opts;
        opts.sector = model.sector();
        const GroundSolution sol = exact_ground_state(model.build(), opts);
        bool in_sector = true;
        for (std::size_t b = 0; b < sol.state.dim(); ++b) {
            if (std::abs(sol.state.amplitudes[b]) > 1e-12 &&
                std::popcount(b) != *opts.sector)
                in_sector = false;
        }
        rep.check("ground state conserves the particle sector", in_sector);
    }

    // The entangling schedule covers every (non-trash, trash) pair once.
    {
        const int L = 8;
        const auto trash = default_trash_sites(L, default_trash_count(L));
        const auto syndrome = build_syndrome_circuit(L, trash);
        bool ok = true;
        try {
            syndrome.spec.validate();
        } catch (const std::exception&) {
            ok = false;
        }
        std::map<std::pair<int, int>, int> cross;
        for (const auto& layer : syndrome.spec.entangling_schedule)
            for (const auto& [a, b] : layer) {
                const bool a_trash = std::find(trash.begin(), trash.end(), a) != trash.end();
                const bool b_trash = std::find(trash.begin(), trash.end(), b) != trash.end();
                if (!a_trash && b_trash) ++cross[{a, b}];
            }
        const std::size_t expected =
            static_cast<std::size_t>(L - static_cast<int>(trash.size())) * trash.size();
        ok = ok && cross.size() == expected;
        for (const auto& [pair, count] : cross) ok = ok && count == 1;
        rep.check("entangling schedule covers each pair once", ok);
    }

    // SPSA is deterministic for a fixed seed.
    {
        const auto quadratic = [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += (v - 0.5) * (v - 0.5);
            return s;
        };
        SpsaConfig cfg;
        cfg.max_iter = 40;
        cfg.seed = 99;
        const auto rec1 = spsa_minimize(quadratic, std::vector<double>(4, 0.0), cfg);
        const auto rec2 = spsa_minimize(quadratic, std::vector<double>(4, 0.0), cfg);
        rep.check("optimizer reruns bit-identically",
                  rec1.cost_trace == rec2.cost_trace && rec1.final_params == rec2.final_params);
    }

    // Calibration matrices are column stochastic.
    {
        NoiseModel noise;
        noise.readout = {{0.02, 0.05}};
        const auto cal = build_calibration_matrix(noise, {4, 5}, 8, 2000, 7);
        bool ok = true;
        for (std::size_t col = 0; col < cal.dim(); ++col) {
            double sum = 0.0;
            for (std::size_t row = 0; row < cal.dim(); ++row) sum += cal.at(row, col);
            ok = ok && std::abs(sum - 1.0) < 1e-9;
        }
        rep.check("calibration columns sum to one", ok);
    }

    // Dense and iterative ground solvers agree.
    {
        TlfiParams tlfi;
        tlfi.n_sites = 6;
        tlfi.g_x = 0.9;
        const PauliHamiltonian h = build_tlfi(tlfi);
        const GroundSolution dense = exact_ground_state(h);
        GroundOptions opts;
        opts.force_iterative = true;
        const GroundSolution iter = exact_ground_state(h, opts);
        rep.check("dense and iterative solvers agree",
                  std::abs(dense.energy - iter.energy) < 1e-8);
    }

    // Counts-based and expectation-based compression costs agree.
    {
        const StateVector state = random_state(4, 21);
        const std::vector<int> trash = {2, 3};
        const double exact = cost_from_expectations(state, trash);
        const auto hist = sample_measurements(state, trash, 20000, 31);
        const double sampled = cost_from_counts(hist);
        const double sigma = std::sqrt(static_cast<double>(trash.size()) / 4.0 / 20000.0);
        rep.check("sampled cost matches the exact cost", std::abs(sampled - exact) <= 4.0 * sigma);
    }

    out << (rep.failures == 0 ? "all checks passed\n"
                              : std::to_string(rep.failures) + " check(s) failed\n");
    return rep.failures;
}

}  // namespace vqad
