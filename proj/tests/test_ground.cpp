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

#include <bit>

#include "oracles.hpp"
#include "vqad/ground.hpp"
#include "vqad/observables.hpp"

using vqad::GroundOptions;
using vqad::GroundSolution;
using vqad::StateVector;
using vqad::SymmetryBreak;

namespace {

vqad::PauliHamiltonian tlfi(int L, double g_x, double g_z,
                            vqad::Boundary boundary = vqad::Boundary::Periodic) {
    vqad::TlfiParams p;
    p.n_sites = L;
    p.g_x = g_x;
    p.g_z = g_z;
    p.boundary = boundary;
    return build_tlfi(p);
}

vqad::PauliHamiltonian debhm(int L, double dJ, double V) {
    vqad::DebhmParams p;
    p.n_sites = L;
    p.delta_j = dJ;
    p.repulsion = V;
    return build_debhm_spin(p);
}

double residual(const vqad::PauliHamiltonian& h, const GroundSolution& g) {
    const StateVector hv = vqad::apply_hamiltonian(h, g.state);
    double acc = 0.0;
    for (std::uint64_t b = 0; b < hv.dim(); ++b)
        acc += std::norm(hv.amplitudes[b] - g.energy * g.state.amplitudes[b]);
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("dense ground energies match an independent eigensolver") {
    for (int L : {3, 4, 5}) {
        const auto h = tlfi(L, 1.2, 0.3);
        const GroundSolution g = vqad::exact_ground_state(h);
        const double want = oracle::ground_energy(oracle::tlfi_dense(L, 1.0, 1.2, 0.3, true));
        CHECK(g.energy == doctest::Approx(want).epsilon(1e-10));
        CHECK(g.state.norm() == doctest::Approx(1.0));
        CHECK(residual(h, g) < 1e-6 * vqad::coefficient_l1_norm(h));
    }
}

TEST_CASE("sector basis enumerates fillings in order") {
    const auto basis = vqad::sector_basis(6, 2);
    CHECK(basis.size() == 15);  // C(6,2)
    for (std::size_t k = 0; k < basis.size(); ++k) {
        CHECK(std::popcount(basis[k]) == 2);
        if (k > 0) CHECK(basis[k] > basis[k - 1]);
    }
    CHECK(vqad::sector_basis(4, 0).size() == 1);
    CHECK(vqad::sector_basis(4, 4).size() == 1);
}

TEST_CASE("sector-restricted solve agrees with the dense bottom of that sector") {
    const auto h = debhm(6, 0.4, 1.5);
    GroundOptions opts;
    opts.sector = 3;
    const GroundSolution g = vqad::exact_ground_state(h, opts);
    CHECK(g.sector == 3);

    // Dense oracle: project onto the filling-3 sector by scanning eigenvectors.
    const oracle::Mat dense = oracle::debhm_dense(6, 1.0, 0.4, 1.5);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(dense);
    double want = 1e100;
    for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c) {
        double weight = 0.0;
        for (std::uint64_t b = 0; b < 64; ++b)
            if (std::popcount(b) == 3) weight += std::norm(es.eigenvectors()(static_cast<Eigen::Index>(b), c));
        if (weight > 0.999) {
            want = es.eigenvalues()(c);
            break;
        }
    }
    CHECK(g.energy == doctest::Approx(want).epsilon(1e-9));

    for (std::uint64_t b = 0; b < g.state.dim(); ++b)
        if (std::popcount(b) != 3) CHECK(std::abs(g.state.amplitudes[b]) == 0.0);
}

TEST_CASE("iterative path reproduces the dense path") {
    const auto h = tlfi(8, 0.7, 0.1);
    const GroundSolution dense = vqad::exact_ground_state(h);

    GroundOptions iter;
    iter.force_iterative = true;
    const GroundSolution lanczos = vqad::exact_ground_state(h, iter);

    CHECK(lanczos.energy == doctest::Approx(dense.energy).epsilon(1e-9));
    CHECK(residual(h, lanczos) < 1e-6 * vqad::coefficient_l1_norm(h));

    // Same check in a particle sector.
    const auto hb = debhm(8, -0.3, 2.0);
    GroundOptions sopts;
    sopts.sector = 4;
    const GroundSolution sd = vqad::exact_ground_state(hb, sopts);
    sopts.force_iterative = true;
    const GroundSolution sl = vqad::exact_ground_state(hb, sopts);
    CHECK(sl.energy == doctest::Approx(sd.energy).epsilon(1e-9));
}

TEST_CASE("degeneracy gap separates ordered and disordered regimes") {
    GroundOptions opts;
    const GroundSolution ordered = vqad::exact_ground_state(tlfi(6, 0.2, 0.0), opts);
    const GroundSolution disordered = vqad::exact_ground_state(tlfi(6, 2.0, 0.0), opts);
    CHECK(ordered.degeneracy_gap < 1e-3);
    CHECK(disordered.degeneracy_gap > 0.5);
}

TEST_CASE("symmetry break rotates inside a near-degenerate doublet") {
    const auto h = tlfi(8, 0.3, 0.0);

    GroundOptions none;
    const GroundSolution plain = vqad::exact_ground_state(h, none);
    CHECK(std::abs(vqad::staggered_magnetization(plain.state)) < 0.05);

    GroundOptions plus;
    plus.symmetry_break = SymmetryBreak::Plus;
    const GroundSolution up = vqad::exact_ground_state(h, plus);
    CHECK(vqad::staggered_magnetization(up.state) > 0.8);
    CHECK(up.state.norm() == doctest::Approx(1.0));

    GroundOptions minus;
    minus.symmetry_break = SymmetryBreak::Minus;
    const GroundSolution down = vqad::exact_ground_state(h, minus);
    CHECK(vqad::staggered_magnetization(down.state) < -0.8);

    // The rotated state is a doublet combination: its Rayleigh energy sits
    // within the doublet interval, a hair above the true ground energy.
    CHECK(up.energy >= plain.energy - 1e-12);
    CHECK(up.energy <= plain.energy + plain.degeneracy_gap + 1e-9);
}

TEST_CASE("symmetry break leaves a gapped ground state untouched") {
    const auto h = tlfi(6, 2.0, 0.0);
    GroundOptions plus;
    plus.symmetry_break = SymmetryBreak::Plus;
    const GroundSolution g = vqad::exact_ground_state(h, plus);
    const GroundSolution plain = vqad::exact_ground_state(h);
    CHECK(g.energy == doctest::Approx(plain.energy).epsilon(1e-12));
    CHECK(residual(h, g) < 1e-6 * vqad::coefficient_l1_norm(h));
    CHECK(std::abs(vqad::staggered_magnetization(g.state)) < 0.05);
}

TEST_CASE("grid solver matches pointwise solves and is worker-invariant") {
    vqad::ModelSpec model;
    model.kind = vqad::ModelSpec::Kind::Tlfi;
    model.tlfi.n_sites = 4;
    model.tlfi.g_x = 0.5;

    vqad::GridSpec grid;
    grid.axis1 = {"g_x", {0.4, 0.9, 1.6}};
    grid.axis2 = {"g_z", {0.0, 0.2}};

    const auto serial = vqad::grid_ground_states(model, grid, {}, 1);
    const auto threaded = vqad::grid_ground_states(model, grid, {}, 3);
    REQUIRE(serial.solutions.size() == 6);
    REQUIRE(threaded.solutions.size() == 6);

    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i) {
            const vqad::ModelSpec at = model.at(grid, i, j);
            const GroundSolution direct = vqad::exact_ground_state(at.build());
            CHECK(serial.at(i, j).energy == doctest::Approx(direct.energy).epsilon(1e-12));
            CHECK(threaded.at(i, j).energy == doctest::Approx(direct.energy).epsilon(1e-12));
        }
}
