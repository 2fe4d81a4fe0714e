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

#include "vqad/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "vqad/rng.hpp"

namespace vqad {

ParamCircuit build_vqe_ansatz(int n_qubits) {
    if (n_qubits < 2 || n_qubits > kMaxCircuitQubits)
        throw std::invalid_argument("ansatz register must have 2..16 sites");
    ParamCircuit c;
    c.n_qubits = n_qubits;
    c.n_params = 2 * n_qubits;
    for (int i = 1; i <= n_qubits; ++i) c.gates.push_back(Gate::ry_slot(i, i - 1));
    for (int i = 1; i <= n_qubits; ++i) {
        const int j = i % n_qubits + 1;
        if (n_qubits == 2 && i == 2) break;  // ring degenerates to one CZ
        c.gates.push_back(Gate::cz(i, j));
    }
    for (int i = 1; i <= n_qubits; ++i) c.gates.push_back(Gate::ry_slot(i, n_qubits + i - 1));
    c.validate();
    return c;
}

int default_trash_count(int n_sites) {
    if (n_sites < 2) throw std::invalid_argument("need at least 2 sites");
    int n_t = 0;
    while ((1 << (n_t + 1)) <= n_sites) ++n_t;
    return n_t;
}

std::vector<int> default_trash_sites(int n_sites, int n_t) {
    if (n_t < 1 || n_t >= n_sites)
        throw std::invalid_argument("trash size must satisfy 1 <= n_t < L");
    const int left = (n_sites - n_t + 1) / 2;
    std::vector<int> trash(static_cast<std::size_t>(n_t));
    for (int k = 0; k < n_t; ++k) trash[static_cast<std::size_t>(k)] = left + 1 + k;
    return trash;
}

void SyndromeSpec::validate() const {
    const int n_t = static_cast<int>(trash.size());
    if (n_t < 1 || n_t >= n_qubits) throw std::invalid_argument("bad trash register size");
    if (n_layers != n_t) throw std::invalid_argument("layer count must equal trash size");
    std::vector<bool> is_trash(static_cast<std::size_t>(n_qubits) + 1, false);
    for (int t : trash) {
        if (t < 1 || t > n_qubits) throw std::invalid_argument("trash site out of range");
        if (is_trash[static_cast<std::size_t>(t)])
            throw std::invalid_argument("duplicate trash site");
        is_trash[static_cast<std::size_t>(t)] = true;
    }
    if (static_cast<int>(entangling_schedule.size()) != n_layers)
        throw std::invalid_argument("schedule must list one layer per trash site");

    // (non-trash, trash) pair coverage across all layers: each exactly once.
    std::vector<int> pair_count(static_cast<std::size_t>(n_qubits + 1) *
                                    static_cast<std::size_t>(n_qubits + 1),
                                0);
    for (const auto& layer : entangling_schedule) {
        std::vector<int> seen_site(static_cast<std::size_t>(n_qubits) + 1, 0);
        for (const auto& [site, t] : layer) {
            if (t < 1 || t > n_qubits || !is_trash[static_cast<std::size_t>(t)])
                throw std::invalid_argument("schedule pairs must target trash sites");
            if (site < 1 || site > n_qubits)
                throw std::invalid_argument("schedule site out of range");
            if (is_trash[static_cast<std::size_t>(site)]) continue;  // trash-trash chain
            ++seen_site[static_cast<std::size_t>(site)];
            ++pair_count[static_cast<std::size_t>(site) * static_cast<std::size_t>(n_qubits + 1) +
                         static_cast<std::size_t>(t)];
        }
        for (int q = 1; q <= n_qubits; ++q)
            if (!is_trash[static_cast<std::size_t>(q)] && seen_site[static_cast<std::size_t>(q)] != 1)
                throw std::invalid_argument("each non-trash site must pair exactly once per layer");
    }
    for (int q = 1; q <= n_qubits; ++q) {
        if (is_trash[static_cast<std::size_t>(q)]) continue;
        for (int t : trash) {
            const int c = pair_count[static_cast<std::size_t>(q) *
                                         static_cast<std::size_t>(n_qubits + 1) +
                                     static_cast<std::size_t>(t)];
            if (c != 1)
                throw std::invalid_argument("pair coverage broken: every (site, trash) pair "
                                            "must occur exactly once across layers");
        }
    }
}

SyndromeCircuit build_syndrome_circuit(int n_qubits, const std::vector<int>& trash) {
    if (n_qubits < 2 || n_qubits > kMaxCircuitQubits)
        throw std::invalid_argument("syndrome register must have 2..16 sites");
    const int n_t = static_cast<int>(trash.size());
    if (n_t < 1 || n_t >= n_qubits)
        throw std::invalid_argument("trash size must satisfy 1 <= n_t < L");

    SyndromeSpec spec;
    spec.n_qubits = n_qubits;
    spec.trash = trash;
    spec.n_layers = n_t;

    std::vector<bool> is_trash(static_cast<std::size_t>(n_qubits) + 1, false);
    for (int t : trash) {
        if (t < 1 || t > n_qubits) throw std::invalid_argument("trash site out of range");
        if (is_trash[static_cast<std::size_t>(t)])
            throw std::invalid_argument("duplicate trash site");
        is_trash[static_cast<std::size_t>(t)] = true;
    }
    std::vector<int> rest;
    for (int q = 1; q <= n_qubits; ++q)
        if (!is_trash[static_cast<std::size_t>(q)]) rest.push_back(q);

    ParamCircuit c;
    c.n_qubits = n_qubits;
    c.n_params = spec.n_params();

    int slot = 0;
    for (int layer = 0; layer < n_t; ++layer) {
        for (int q = 1; q <= n_qubits; ++q) c.gates.push_back(Gate::ry_slot(q, slot++));
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const int t = trash[(k + static_cast<std::size_t>(layer)) % trash.size()];
            pairs.emplace_back(rest[k], t);
            c.gates.push_back(Gate::cz(rest[k], t));
        }
        for (std::size_t k = 0; k + 1 < trash.size(); ++k) {
            pairs.emplace_back(trash[k], trash[k + 1]);
            c.gates.push_back(Gate::cz(trash[k], trash[k + 1]));
        }
        spec.entangling_schedule.push_back(std::move(pairs));
    }
    for (int t : trash) c.gates.push_back(Gate::ry_slot(t, slot++));

    c.validate();
    spec.validate();
    return {std::move(c), std::move(spec)};
}

double cost_from_counts(const ShotHistogram& hist) {
    if (hist.n_shots < 1) throw std::invalid_argument("histogram has no shots");
    double acc = 0.0;
    for (const auto& [key, count] : hist.counts) {
        int ones = 0;
        for (char ch : key) ones += ch == '1';
        acc += static_cast<double>(count) * ones;
    }
    return acc / static_cast<double>(hist.n_shots);
}

double cost_from_expectations(const StateVector& state, const std::vector<int>& trash) {
    if (trash.empty()) throw std::invalid_argument("empty trash register");
    double acc = 0.0;
    for (int site : trash) {
        PauliString z;
        z.coefficient = 1.0;
        z.letters[site] = 'Z';
        acc += 0.5 * (1.0 - expectation_pauli_string(state, z));
    }
    return acc;
}

void SpsaConfig::validate() const {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (a && !(*a > 0.0)) throw std::invalid_argument("a must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    if (big_a && !(*big_a >= 0.0)) throw std::invalid_argument("A must be >= 0");
    if (!(alpha > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("alpha and gamma must be > 0");
}

double spsa_gain_a(int k, double a, double big_a, double alpha) {
    return a / std::pow(static_cast<double>(k) + 1.0 + big_a, alpha);
}

double spsa_gain_c(int k, double c, double gamma) {
    return c / std::pow(static_cast<double>(k) + 1.0, gamma);
}

TrainingRecord spsa_minimize(const std::function<double(const std::vector<double>&)>& cost,
                             std::vector<double> init, const SpsaConfig& cfg) {
    cfg.validate();
    if (init.empty()) throw std::invalid_argument("no parameters to optimize");

    const std::size_t n = init.size();
    const double big_a = cfg.big_a ? *cfg.big_a : 0.1 * cfg.max_iter;

    std::mt19937_64 rng(cfg.seed);
    const auto rademacher = [&rng](std::vector<double>& delta) {
        for (double& d : delta) d = (rng() & 1ULL) ? 1.0 : -1.0;
    };

    TrainingRecord rec;
    const auto evaluate = [&](const std::vector<double>& p) {
        const double f = cost(p);
        ++rec.n_evaluations;
        if (!std::isfinite(f)) {
            rec.converged_cost = rec.cost_trace.empty()
                                     ? f
                                     : *std::min_element(rec.cost_trace.begin(),
                                                         rec.cost_trace.end());
            throw SpsaAbort("non-finite cost after " +
                                std::to_string(rec.cost_trace.size()) + " trace entries",
                            rec);
        }
        return f;
    };

    std::vector<double> theta = init;
    double best_cost = evaluate(theta);
    std::vector<double> best_params = theta;
    rec.cost_trace.push_back(best_cost);

    // Step-size calibration: estimate the mean gradient magnitude at the
    // start point and scale `a` so the first update moves each parameter by
    // about 0.1.
    double a_gain;
    if (cfg.a) {
        a_gain = *cfg.a;
    } else {
        constexpr int kProbes = 5;
        constexpr double kTargetStep = 0.1;
        std::vector<double> delta(n), probe(n);
        double mean_mag = 0.0;
        for (int t = 0; t < kProbes; ++t) {
            rademacher(delta);
            const double c0 = spsa_gain_c(0, cfg.c, cfg.gamma);
            for (std::size_t i = 0; i < n; ++i) probe[i] = theta[i] + c0 * delta[i];
            const double fp = evaluate(probe);
            for (std::size_t i = 0; i < n; ++i) probe[i] = theta[i] - c0 * delta[i];
            const double fm = evaluate(probe);
            mean_mag += std::abs(fp - fm) / (2.0 * c0);
        }
        mean_mag /= kProbes;
        a_gain = kTargetStep * std::pow(big_a + 1.0, cfg.alpha) /
                 std::max(mean_mag, 1e-12);
    }

    std::vector<double> delta(n), plus(n), minus(n);
    for (int k = 0; k < cfg.max_iter; ++k) {
        const double ck = spsa_gain_c(k, cfg.c, cfg.gamma);
        const double ak = spsa_gain_a(k, a_gain, big_a, cfg.alpha);
        rademacher(delta);
        for (std::size_t i = 0; i < n; ++i) {
            plus[i] = theta[i] + ck * delta[i];
            minus[i] = theta[i] - ck * delta[i];
        }
        const double fp = evaluate(plus);
        const double fm = evaluate(minus);

        const double iter_best = std::min(fp, fm);
        rec.cost_trace.push_back(iter_best);
        if (iter_best < best_cost) {
            best_cost = iter_best;
            best_params = fp <= fm ? plus : minus;
        }

        const double scale = (fp - fm) / (2.0 * ck);
        for (std::size_t i = 0; i < n; ++i) theta[i] -= ak * scale / delta[i];
    }

    // The loop only ever samples perturbed points theta +- c_k*delta, so the
    // final iterate itself is evaluated once; near an optimum it is below
    // both perturbed readings by O(c^2).
    const double f_final = evaluate(theta);
    rec.cost_trace.push_back(f_final);
    if (f_final < best_cost) {
        best_cost = f_final;
        best_params = theta;
    }

    rec.final_params = std::move(best_params);
    rec.converged_cost = best_cost;
    return rec;
}

std::vector<double> seeded_uniform_params(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> p(n);
    for (double& x : p) x = angle(rng);
    return p;
}

VqeResult run_vqe(const PauliHamiltonian& h, const SpsaConfig& cfg,
                  const std::optional<std::vector<double>>& init) {
    ParamCircuit ansatz = build_vqe_ansatz(h.n_qubits);
    std::vector<double> start =
        init ? *init
             : seeded_uniform_params(static_cast<std::size_t>(ansatz.n_params),
                                     mix_seed(cfg.seed, 0x696e6974ULL));
    if (static_cast<int>(start.size()) != ansatz.n_params)
        throw std::invalid_argument("initial parameter count mismatch");

    const StateVector zero = StateVector::zero_state(h.n_qubits);
    const auto energy = [&](const std::vector<double>& p) {
        return energy_expectation(run_circuit(zero, ansatz, p), h);
    };

    VqeResult out;
    out.record = spsa_minimize(energy, std::move(start), cfg);
    out.state = run_circuit(zero, ansatz, out.record.final_params);
    out.ansatz = std::move(ansatz);
    return out;
}

void ShotMode::validate() const {
    if (n_shots < 0) throw std::invalid_argument("negative shot count");
    if (noise) {
        noise->validate();
        if (n_shots == 0)
            throw std::invalid_argument("noisy costs are estimated from counts; "
                                        "set a positive shot count");
    }
}

double syndrome_cost(const StateVector& input, const ParamCircuit& circuit,
                     const std::vector<double>& params, const std::vector<int>& trash,
                     const ShotMode& mode, std::uint64_t eval_seed) {
    mode.validate();
    if (mode.n_shots == 0)
        return cost_from_expectations(run_circuit(input, circuit, params), trash);
    if (mode.noise)
        return cost_from_counts(
            noisy_execute(input, circuit, params, trash, mode.n_shots, *mode.noise, eval_seed));
    return cost_from_counts(
        sample_measurements(run_circuit(input, circuit, params), trash, mode.n_shots, eval_seed));
}

TrainingRecord train_syndrome(const std::vector<StateVector>& training_states,
                              const std::vector<int>& trash, const SpsaConfig& cfg,
                              const ShotMode& mode,
                              const std::optional<std::vector<double>>& init) {
    if (training_states.empty()) throw std::invalid_argument("no training states");
    mode.validate();
    const int L = training_states[0].n_qubits;
    for (const StateVector& s : training_states)
        if (s.n_qubits != L) throw std::invalid_argument("training states differ in size");

    const SyndromeCircuit syn = build_syndrome_circuit(L, trash);
    std::vector<double> start =
        init ? *init
             : seeded_uniform_params(static_cast<std::size_t>(syn.circuit.n_params),
                                     mix_seed(cfg.seed, 0x696e6974ULL));
    if (static_cast<int>(start.size()) != syn.circuit.n_params)
        throw std::invalid_argument("initial parameter count mismatch");

    std::uint64_t eval_counter = 0;
    const auto cost = [&](const std::vector<double>& p) {
        const std::uint64_t eval_seed = mix_seed(mode.seed, eval_counter++);
        double acc = 0.0;
        for (std::size_t s = 0; s < training_states.size(); ++s)
            acc += syndrome_cost(training_states[s], syn.circuit, p, trash, mode,
                                 mix_seed(eval_seed, s));
        return acc / static_cast<double>(training_states.size());
    };

    return spsa_minimize(cost, std::move(start), cfg);
}

}  // namespace vqad
