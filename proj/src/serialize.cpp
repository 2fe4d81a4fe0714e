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

#include "vqad/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace vqad {

json state_to_json(const StateVector& state) {
    json amps = json::array();
    for (const cplx& a : state.amplitudes) amps.push_back({a.real(), a.imag()});
    return {{"n_qubits", state.n_qubits}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
    const int n = j.at("n_qubits").get<int>();
    const auto& amps = j.at("amplitudes");
    if (!amps.is_array() || amps.size() != (1ULL << n))
        throw std::invalid_argument("amplitude list length does not match n_qubits");
    std::vector<cplx> v;
    v.reserve(amps.size());
    for (const auto& pair : amps) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("amplitudes must be [re, im] pairs");
        v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    StateVector s;
    s.n_qubits = n;
    s.amplitudes = std::move(v);
    if (n < 1 || n > kMaxStateQubits) throw std::invalid_argument("n_qubits out of range");
    return s;
}

json hamiltonian_to_json(const PauliHamiltonian& h) {
    json terms = json::array();
    for (const PauliString& t : h.terms) {
        json letters = json::object();
        for (const auto& [site, letter] : t.letters)
            letters[std::to_string(site)] = std::string(1, letter);
        terms.push_back({{"coeff", t.coefficient}, {"paulis", std::move(letters)}});
    }
    return {{"n_qubits", h.n_qubits}, {"terms", std::move(terms)}};
}

PauliHamiltonian hamiltonian_from_json(const json& j) {
    PauliHamiltonian h;
    h.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& term : j.at("terms")) {
        PauliString t;
        t.coefficient = term.at("coeff").get<double>();
        for (const auto& [site_str, letter] : term.at("paulis").items()) {
            const int site = std::stoi(site_str);
            const std::string s = letter.get<std::string>();
            if (s.size() != 1) throw std::invalid_argument("Pauli letter must be one character");
            t.letters[site] = s[0];
        }
        h.terms.push_back(std::move(t));
    }
    return h;
}

json noise_to_json(const NoiseModel& m) {
    json readout = json::array();
    for (const auto& [p01, p10] : m.readout) readout.push_back({p01, p10});
    return {{"p1", m.p1}, {"p2", m.p2}, {"readout", std::move(readout)}};
}

NoiseModel noise_from_json(const json& j) {
    NoiseModel m;
    m.p1 = j.value("p1", 0.0);
    m.p2 = j.value("p2", 0.0);
    if (j.contains("readout")) {
        for (const auto& pair : j.at("readout")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("readout entries must be [p01, p10] pairs");
            m.readout.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
    }
    m.validate();
    return m;
}

json calibration_to_json(const CalibrationMatrix& cal) {
    return {{"n_t", cal.n_t}, {"matrix", cal.matrix}};
}

CalibrationMatrix calibration_from_json(const json& j) {
    CalibrationMatrix cal;
    cal.n_t = j.at("n_t").get<int>();
    cal.matrix = j.at("matrix").get<std::vector<double>>();
    if (cal.n_t < 1 || cal.matrix.size() != cal.dim() * cal.dim())
        throw std::invalid_argument("calibration matrix size mismatch");
    return cal;
}

json histogram_to_json(const ShotHistogram& hist) {
    json counts = json::object();
    for (const auto& [key, count] : hist.counts) counts[key] = count;
    return {{"measured_qubits", hist.measured_qubits},
            {"n_shots", hist.n_shots},
            {"counts", std::move(counts)}};
}

ShotHistogram histogram_from_json(const json& j) {
    ShotHistogram hist;
    hist.measured_qubits = j.at("measured_qubits").get<std::vector<int>>();
    hist.n_shots = j.at("n_shots").get<std::int64_t>();
    for (const auto& [key, count] : j.at("counts").items())
        hist.counts[key] = count.get<std::int64_t>();
    return hist;
}

json trained_params_to_json(const TrainedParams& t) {
    return {{"ansatz", t.ansatz},  {"L", t.n_sites},         {"trash", t.trash},
            {"params", t.params},  {"final_cost", t.final_cost},
            {"seed", t.seed},      {"model", t.model}};
}

TrainedParams trained_params_from_json(const json& j) {
    TrainedParams t;
    t.ansatz = j.at("ansatz").get<std::string>();
    if (t.ansatz != "vqe" && t.ansatz != "syndrome")
        throw std::invalid_argument("ansatz must be 'vqe' or 'syndrome'");
    t.n_sites = j.at("L").get<int>();
    t.trash = j.value("trash", std::vector<int>{});
    t.params = j.at("params").get<std::vector<double>>();
    t.final_cost = j.at("final_cost").get<double>();
    t.seed = j.value("seed", std::uint64_t{0});
    t.model = j.value("model", json::object());
    return t;
}

json model_to_json(const ModelSpec& m) {
    json j = {{"model", m.kind_name()}, {"L", m.n_sites()}};
    if (m.kind == ModelSpec::Kind::Tlfi) {
        j["J"] = m.tlfi.coupling;
        j["g_x"] = m.tlfi.g_x;
        j["g_z"] = m.tlfi.g_z;
        j["boundary"] = m.tlfi.boundary == Boundary::Periodic ? "periodic" : "open";
    } else {
        j["J"] = m.debhm.hopping;
        j["dJ"] = m.debhm.delta_j;
        j["V"] = m.debhm.repulsion;
        j["filling"] = m.debhm.resolved_filling();
    }
    return j;
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    const std::string kind = j.at("model").get<std::string>();
    const int L = j.at("L").get<int>();
    if (kind == "tlfi") {
        m.kind = ModelSpec::Kind::Tlfi;
        m.tlfi.n_sites = L;
        m.tlfi.coupling = j.value("J", 1.0);
        m.tlfi.g_x = j.value("g_x", 0.0);
        m.tlfi.g_z = j.value("g_z", 0.0);
        const std::string boundary = j.value("boundary", "periodic");
        if (boundary == "periodic") m.tlfi.boundary = Boundary::Periodic;
        else if (boundary == "open") m.tlfi.boundary = Boundary::Open;
        else throw std::invalid_argument("boundary must be 'periodic' or 'open'");
    } else if (kind == "debhm") {
        m.kind = ModelSpec::Kind::Debhm;
        m.debhm.n_sites = L;
        m.debhm.hopping = j.value("J", 1.0);
        m.debhm.delta_j = j.value("dJ", 0.0);
        m.debhm.repulsion = j.value("V", 0.0);
        m.debhm.filling = j.value("filling", -1);
    } else {
        throw std::invalid_argument("model must be 'tlfi' or 'debhm'");
    }
    return m;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("JSON parse error in " + path + ": " + e.what());
    }
}

void save_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace vqad
