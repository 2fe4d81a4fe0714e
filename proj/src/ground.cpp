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

#include "vqad/ground.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "vqad/rng.hpp"

namespace vqad {

namespace {

// Problems up to this dimension are diagonalized densely; larger ones go
// through Lanczos.
constexpr std::size_t kDenseDim = 1024;
constexpr double kBreakFieldStrength = 1e-8;

struct WorkingBasis {
    int n_qubits = 0;
    std::optional<int> filling;
    std::vector<std::uint64_t> labels;      // sector only
    std::vector<std::int32_t> rank;         // sector only, full-size lookup

    std::size_t dim() const {
        return filling ? labels.size() : (1ULL << n_qubits);
    }
    bool full() const { return !filling.has_value(); }
};

WorkingBasis make_basis(int n_qubits, std::optional<int> filling) {
    WorkingBasis b;
    b.n_qubits = n_qubits;
    b.filling = filling;
    if (filling) {
        b.labels = sector_basis(n_qubits, *filling);
        b.rank.assign(1ULL << n_qubits, -1);
        for (std::size_t p = 0; p < b.labels.size(); ++p)
            b.rank[b.labels[p]] = static_cast<std::int32_t>(p);
    }
    return b;
}

template <typename Scalar>
Scalar term_factor(const PauliAction& a);

template <>
double term_factor<double>(const PauliAction& a) {
    return a.coefficient * a.prefactor.real();
}

template <>
cplx term_factor<cplx>(const PauliAction& a) {
    return a.coefficient * a.prefactor;
}

// y = H x in the working basis.  Sector vectors are scattered into the full
// register first because individual strings (XX alone, say) leave the sector
// even though their sum does not; the leaked amplitudes cancel exactly.
template <typename Scalar>
struct HamiltonianAction {
    const WorkingBasis* basis;
    std::vector<PauliAction> terms;
    mutable std::vector<Scalar> scatter, gather;
    mutable bool checked_conservation = false;
    double scale = 1.0;

    void apply(const std::vector<Scalar>& x, std::vector<Scalar>& y) const {
        const std::uint64_t full_dim = 1ULL << basis->n_qubits;
        if (basis->full()) {
            y.assign(x.size(), Scalar(0));
            for (const PauliAction& t : terms) {
                const Scalar f = term_factor<Scalar>(t);
                for (std::uint64_t b = 0; b < full_dim; ++b) {
                    const Scalar v = x[b];
                    if (v == Scalar(0)) continue;
                    const double sign = (std::popcount(b & t.sign_mask) & 1) ? -1.0 : 1.0;
                    y[b ^ t.flip_mask] += f * sign * v;
                }
            }
            return;
        }
        scatter.assign(full_dim, Scalar(0));
        gather.assign(full_dim, Scalar(0));
        for (std::size_t p = 0; p < basis->labels.size(); ++p) scatter[basis->labels[p]] = x[p];
        for (const PauliAction& t : terms) {
            const Scalar f = term_factor<Scalar>(t);
            for (std::uint64_t b = 0; b < full_dim; ++b) {
                const Scalar v = scatter[b];
                if (v == Scalar(0)) continue;
                const double sign = (std::popcount(b & t.sign_mask) & 1) ? -1.0 : 1.0;
                gather[b ^ t.flip_mask] += f * sign * v;
            }
        }
        if (!checked_conservation) {
            for (std::uint64_t b = 0; b < full_dim; ++b) {
                if (basis->rank[b] >= 0) continue;
                if (std::abs(gather[b]) > 1e-9 * scale)
                    throw std::invalid_argument(
                        "Hamiltonian does not conserve the particle-number sector");
            }
            checked_conservation = true;
        }
        y.resize(basis->labels.size());
        for (std::size_t p = 0; p < basis->labels.size(); ++p) y[p] = gather[basis->labels[p]];
    }
};

template <typename Scalar>
struct DenseSolved {
    double e0 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    std::vector<Scalar> ground;
    std::vector<Scalar> excited;  // second Ritz/eigen vector, empty when dim = 1
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
DenseSolved<Scalar> dense_lowest(const HamiltonianAction<Scalar>& action) {
    const std::size_t dim = action.basis->dim();
    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(static_cast<Eigen::Index>(dim),
                                                      static_cast<Eigen::Index>(dim));
    std::vector<Scalar> unit(dim, Scalar(0)), col;
    for (std::size_t p = 0; p < dim; ++p) {
        unit[p] = Scalar(1);
        action.apply(unit, col);
        for (std::size_t r = 0; r < dim; ++r) m(static_cast<Eigen::Index>(r),
                                                static_cast<Eigen::Index>(p)) = col[r];
        unit[p] = Scalar(0);
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed");
    DenseSolved<Scalar> out;
    out.e0 = solver.eigenvalues()(0);
    out.e1 = dim > 1 ? solver.eigenvalues()(1) : out.e0;
    out.e2 = dim > 2 ? solver.eigenvalues()(2) : out.e1;
    out.ground.resize(dim);
    for (std::size_t r = 0; r < dim; ++r)
        out.ground[r] = solver.eigenvectors()(static_cast<Eigen::Index>(r), 0);
    if (dim > 1) {
        out.excited.resize(dim);
        for (std::size_t r = 0; r < dim; ++r)
            out.excited[r] = solver.eigenvectors()(static_cast<Eigen::Index>(r), 1);
    }
    return out;
}

template <typename Scalar>
double vec_norm(const std::vector<Scalar>& v) {
    double acc = 0.0;
    for (const Scalar& x : v) acc += std::norm(std::complex<double>(x));
    return std::sqrt(acc);
}

template <typename Scalar>
Scalar vec_dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

template <>
double vec_dot<double>(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <>
cplx vec_dot<cplx>(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

template <typename Scalar>
void random_start(std::vector<Scalar>& v, std::uint64_t seed);

template <>
void random_start<double>(std::vector<double>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& x : v) x = gauss(rng);
}

template <>
void random_start<cplx>(std::vector<cplx>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (cplx& x : v) x = cplx(gauss(rng), gauss(rng));
}

// Lanczos with full reorthogonalization.  Tracks the two lowest Ritz values;
// the ground residual bound beta_j * |s_last| drives convergence.
template <typename Scalar>
DenseSolved<Scalar> lanczos_lowest(const HamiltonianAction<Scalar>& action,
                                   std::uint64_t seed) {
    const std::size_t dim = action.basis->dim();
    const int max_iter = static_cast<int>(std::min<std::size_t>(dim, 350));
    const double tol = 1e-10 * std::max(1.0, action.scale);

    std::vector<std::vector<Scalar>> basis;
    basis.reserve(static_cast<std::size_t>(max_iter) + 1);
    std::vector<double> alpha, beta;

    std::vector<Scalar> v(dim);
    random_start(v, seed);
    {
        const double n = vec_norm(v);
        for (Scalar& x : v) x = x * (1.0 / n);
    }
    basis.push_back(v);

    std::vector<Scalar> w;
    Eigen::VectorXd ritz;
    Eigen::MatrixXd ritz_vecs;
    int converged_at = -1;

    for (int j = 0; j < max_iter; ++j) {
        action.apply(basis.back(), w);
        if (j > 0) {
            const double b = beta.back();
            const std::vector<Scalar>& prev = basis[static_cast<std::size_t>(j) - 1];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= b * prev[i];
        }
        const Scalar a = vec_dot(basis.back(), w);
        const double a_re = std::real(std::complex<double>(a));
        alpha.push_back(a_re);
        {
            const std::vector<Scalar>& cur = basis.back();
            for (std::size_t i = 0; i < dim; ++i) w[i] -= Scalar(a_re) * cur[i];
        }
        // Full reorthogonalization, repeated once if cancellation was heavy.
        for (int pass = 0; pass < 2; ++pass) {
            const double before = vec_norm(w);
            for (const std::vector<Scalar>& u : basis) {
                const Scalar c = vec_dot(u, w);
                if (std::abs(std::complex<double>(c)) == 0.0) continue;
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * u[i];
            }
            if (vec_norm(w) > 0.7 * before) break;
        }
        const double b_next = vec_norm(w);

        // Ritz values of the current tridiagonal every few steps.
        const bool check = b_next < tol || j == max_iter - 1 || (j >= 10 && j % 5 == 0);
        if (check) {
            const int n = static_cast<int>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                t(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < n) {
                    t(i, i + 1) = beta[static_cast<std::size_t>(i)];
                    t(i + 1, i) = beta[static_cast<std::size_t>(i)];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            ritz = es.eigenvalues();
            ritz_vecs = es.eigenvectors();
            const double bound0 = b_next * std::abs(ritz_vecs(n - 1, 0));
            const double bound1 = n > 1 ? b_next * std::abs(ritz_vecs(n - 1, 1)) : 0.0;
            if ((bound0 <= tol && bound1 <= 1e4 * tol) || b_next < tol) {
                converged_at = j;
                break;
            }
        }
        if (b_next < tol) {  // invariant subspace reached
            converged_at = j;
            break;
        }
        beta.push_back(b_next);
        for (Scalar& x : w) x = x * (1.0 / b_next);
        basis.push_back(w);
    }
    (void)converged_at;

    if (ritz.size() == 0) throw std::runtime_error("Lanczos produced no Ritz values");

    DenseSolved<Scalar> out;
    out.e0 = ritz(0);
    out.e1 = ritz.size() > 1 ? ritz(1) : ritz(0);
    out.e2 = ritz.size() > 2 ? ritz(2) : out.e1;
    const int n = static_cast<int>(alpha.size());
    const auto reconstruct = [&](int column, std::vector<Scalar>& dst) {
        dst.assign(dim, Scalar(0));
        for (int k = 0; k < n && k < static_cast<int>(basis.size()); ++k) {
            const double s = ritz_vecs(k, column);
            const std::vector<Scalar>& u = basis[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < dim; ++i) dst[i] += Scalar(s) * u[i];
        }
        const double gn = vec_norm(dst);
        for (Scalar& x : dst) x = x * (1.0 / gn);
    };
    reconstruct(0, out.ground);
    if (n > 1 && dim > 1) reconstruct(1, out.excited);

    // Rayleigh refinement of the ground energy.
    action.apply(out.ground, w);
    const Scalar rq = vec_dot(out.ground, w);
    out.e0 = std::real(std::complex<double>(rq));
    return out;
}

// A ground pair is treated as a symmetry doublet when its internal splitting
// is at most this fraction of the gap separating it from the rest of the
// spectrum (Anderson-tower signature).
constexpr double kDoubletGapRatio = 0.2;

template <typename Scalar>
GroundSolution solve_in_basis(const PauliHamiltonian& h, const WorkingBasis& basis,
                              const GroundOptions& opts) {
    HamiltonianAction<Scalar> action;
    action.basis = &basis;
    action.scale = std::max(1.0, coefficient_l1_norm(h));
    action.terms.reserve(h.terms.size());
    for (const PauliString& t : h.terms)
        action.terms.push_back(compile_pauli_action(t, h.n_qubits));

    const std::size_t dim = basis.dim();
    DenseSolved<Scalar> solved;
    if (dim <= kDenseDim && !(opts.force_iterative && dim >= 8)) {
        solved = dense_lowest(action);
    } else {
        solved = lanczos_lowest(action, mix_seed(0x6c616e63'7a6f73ULL, dim));
    }

    // Residual check against the coefficient bound on |H|.
    std::vector<Scalar> hx;
    action.apply(solved.ground, hx);
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const std::complex<double> d =
            std::complex<double>(hx[i]) - solved.e0 * std::complex<double>(solved.ground[i]);
        res += std::norm(d);
    }
    res = std::sqrt(res);
    if (res > 1e-6 * action.scale)
        throw std::runtime_error("ground-state solver did not converge (residual " +
                                 std::to_string(res) + ")");

    GroundSolution g;
    g.energy = solved.e0;
    g.degeneracy_gap = std::max(0.0, solved.e1 - solved.e0);
    g.sector = basis.filling;

    // The 1e-8 break field cannot tip a pair whose tunneling splitting
    // exceeds it, so when a sign is requested and the lowest two states form
    // a doublet split off from the rest of the spectrum, rotate within their
    // span to the combination that extremizes the staggered magnetization
    // with the requested sign.  The result is not an eigenvector; its energy
    // is the Rayleigh quotient and sits inside the pair interval.
    const double gap12 = std::max(0.0, solved.e2 - solved.e1);
    if (opts.symmetry_break != SymmetryBreak::None && !solved.excited.empty() &&
        g.degeneracy_gap <= kDoubletGapRatio * gap12) {
        std::vector<double> stag(dim);
        for (std::size_t p = 0; p < dim; ++p) {
            const std::uint64_t label = basis.full() ? p : basis.labels[p];
            double acc = 0.0;
            for (int site = 1; site <= h.n_qubits; ++site) {
                const double z = (label >> (h.n_qubits - site)) & 1ULL ? -1.0 : 1.0;
                acc += (site % 2 == 0 ? 1.0 : -1.0) * z;
            }
            stag[p] = acc;
        }
        std::complex<double> f01(0.0, 0.0);
        double f00 = 0.0, f11 = 0.0;
        for (std::size_t p = 0; p < dim; ++p) {
            const std::complex<double> a(solved.ground[p]);
            const std::complex<double> b(solved.excited[p]);
            f00 += stag[p] * std::norm(a);
            f11 += stag[p] * std::norm(b);
            f01 += stag[p] * std::conj(a) * b;
        }
        Eigen::Matrix2cd f;
        f << f00, f01, std::conj(f01), f11;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(f);
        // Column 1 holds the larger eigenvalue (more positive staggered sum).
        const int column = opts.symmetry_break == SymmetryBreak::Plus ? 1 : 0;
        std::complex<double> u0 = es.eigenvectors()(0, column);
        std::complex<double> u1 = es.eigenvectors()(1, column);
        // Strip the arbitrary global phase so real inputs stay real.
        const std::complex<double> big = std::abs(u0) >= std::abs(u1) ? u0 : u1;
        const std::complex<double> phase = std::conj(big) / std::abs(big);
        u0 *= phase;
        u1 *= phase;
        std::vector<Scalar> mixed(dim);
        for (std::size_t p = 0; p < dim; ++p) {
            const std::complex<double> amp = u0 * std::complex<double>(solved.ground[p]) +
                                             u1 * std::complex<double>(solved.excited[p]);
            if constexpr (std::is_same_v<Scalar, double>)
                mixed[p] = amp.real();
            else
                mixed[p] = amp;
        }
        double nrm = 0.0;
        for (const Scalar& x : mixed) nrm += std::norm(std::complex<double>(x));
        nrm = std::sqrt(nrm);
        for (Scalar& x : mixed) x = x * (1.0 / nrm);
        action.apply(mixed, hx);
        std::complex<double> rq(0.0, 0.0);
        for (std::size_t p = 0; p < dim; ++p)
            rq += std::conj(std::complex<double>(mixed[p])) * std::complex<double>(hx[p]);
        solved.ground = std::move(mixed);
        g.energy = rq.real();
    }

    g.state.n_qubits = h.n_qubits;
    g.state.amplitudes.assign(1ULL << h.n_qubits, cplx(0.0, 0.0));
    if (basis.full()) {
        for (std::size_t b = 0; b < dim; ++b)
            g.state.amplitudes[b] = cplx(std::complex<double>(solved.ground[b]));
    } else {
        for (std::size_t p = 0; p < dim; ++p)
            g.state.amplitudes[basis.labels[p]] = cplx(std::complex<double>(solved.ground[p]));
    }
    return g;
}

PauliHamiltonian with_break_field(const PauliHamiltonian& h, SymmetryBreak sb) {
    if (sb == SymmetryBreak::None) return h;
    PauliHamiltonian out = h;
    const double s = sb == SymmetryBreak::Plus ? 1.0 : -1.0;
    for (int i = 1; i <= h.n_qubits; ++i) {
        PauliString t;
        t.coefficient = -s * kBreakFieldStrength * ((i % 2 == 0) ? 1.0 : -1.0);
        t.letters[i] = 'Z';
        out.terms.push_back(std::move(t));
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> sector_basis(int n_qubits, int filling) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits)
        throw std::invalid_argument("qubit count outside supported range");
    if (filling < 0 || filling > n_qubits)
        throw std::invalid_argument("filling outside 0..n_qubits");
    std::vector<std::uint64_t> labels;
    const std::uint64_t dim = 1ULL << n_qubits;
    for (std::uint64_t b = 0; b < dim; ++b)
        if (std::popcount(b) == filling) labels.push_back(b);
    return labels;
}

GroundSolution exact_ground_state(const PauliHamiltonian& h, const GroundOptions& opts) {
    if (h.n_qubits < 1) throw std::invalid_argument("empty register");
    if (!opts.sector && h.n_qubits > kMaxCircuitQubits)
        throw std::invalid_argument("full-space diagonalization is limited to 16 sites; "
                                    "pass a sector for larger chains");
    if (h.n_qubits > kMaxStateQubits)
        throw std::invalid_argument("register size above the 20-site limit");

    const PauliHamiltonian solved = with_break_field(h, opts.symmetry_break);
    const WorkingBasis basis = make_basis(h.n_qubits, opts.sector);
    if (basis.dim() == 0) throw std::invalid_argument("empty sector basis");

    if (is_real_hamiltonian(solved))
        return solve_in_basis<double>(solved, basis, opts);
    return solve_in_basis<cplx>(solved, basis, opts);
}

GridGroundStates grid_ground_states(const ModelSpec& model, const GridSpec& grid,
                                    const GroundOptions& opts, int workers) {
    grid.validate();
    GridGroundStates out;
    out.grid = grid;
    out.solutions.resize(static_cast<std::size_t>(grid.size()));

    GroundOptions point_opts = opts;
    if (!point_opts.sector) point_opts.sector = model.sector();

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= grid.size()) return;
            const int i = idx % grid.n1();
            const int j = idx / grid.n1();
            try {
                const ModelSpec m = model.at(grid, i, j);
                out.solutions[static_cast<std::size_t>(idx)] =
                    exact_ground_state(m.build(), point_opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int n_threads = std::max(1, std::min(workers, grid.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace vqad
