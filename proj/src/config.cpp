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

#include "vqad/config.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

namespace vqad {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& scope) {
    if (!obj.is_object()) fail(scope + " must be a JSON object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            fail("unknown field '" + (scope.empty() ? item.key() : scope + "." + item.key()) + "'");
    }
}

double want_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail("field '" + field + "' must be a number");
    return j.get<double>();
}

int want_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) fail("field '" + field + "' must be an integer");
    return j.get<int>();
}

std::string want_string(const json& j, const std::string& field) {
    if (!j.is_string()) fail("field '" + field + "' must be a string");
    return j.get<std::string>();
}

const std::set<std::string> kCommands = {"ground-truth", "vqe-sweep", "vqad-train", "vqad-sweep",
                                         "discover",     "calibrate", "mitigate",   "check"};

bool needs_model(const std::string& command) {
    return command != "mitigate" && command != "check";
}

bool runs_circuits(const std::string& command) {
    return command == "vqe-sweep" || command == "vqad-train" || command == "vqad-sweep" ||
           command == "discover" || command == "calibrate";
}

GridAxis parse_axis(const json& j, const std::string& scope) {
    check_keys(j, {"name", "values", "min", "max", "n"}, scope);
    GridAxis axis;
    if (!j.contains("name")) fail("missing field '" + scope + ".name'");
    axis.name = want_string(j.at("name"), scope + ".name");
    if (j.contains("values")) {
        if (j.contains("min") || j.contains("max") || j.contains("n"))
            fail("'" + scope + "' mixes explicit values with a linspace range");
        if (!j.at("values").is_array() || j.at("values").empty())
            fail("field '" + scope + ".values' must be a non-empty array");
        for (const auto& v : j.at("values"))
            axis.values.push_back(want_number(v, scope + ".values"));
    } else {
        for (const char* key : {"min", "max", "n"})
            if (!j.contains(key)) fail("missing field '" + scope + "." + key + "'");
        const double lo = want_number(j.at("min"), scope + ".min");
        const double hi = want_number(j.at("max"), scope + ".max");
        const int n = want_int(j.at("n"), scope + ".n");
        if (n < 1) fail("field '" + scope + ".n' must be positive");
        axis.values = linspace(lo, hi, n);
    }
    return axis;
}

SpsaConfig parse_spsa(const json& j) {
    check_keys(j, {"max_iter", "a", "c", "big_a", "alpha", "gamma"}, "spsa");
    SpsaConfig cfg;
    if (j.contains("max_iter")) cfg.max_iter = want_int(j.at("max_iter"), "spsa.max_iter");
    if (j.contains("a")) cfg.a = want_number(j.at("a"), "spsa.a");
    if (j.contains("c")) cfg.c = want_number(j.at("c"), "spsa.c");
    if (j.contains("big_a")) cfg.big_a = want_number(j.at("big_a"), "spsa.big_a");
    if (j.contains("alpha")) cfg.alpha = want_number(j.at("alpha"), "spsa.alpha");
    if (j.contains("gamma")) cfg.gamma = want_number(j.at("gamma"), "spsa.gamma");
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        fail(std::string("spsa: ") + e.what());
    }
    return cfg;
}

json value_from_text(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return json(text);
    return parsed;
}

}  // namespace

RunConfig parse_config(const json& raw) {
    const json* src = &raw;
    // A run manifest wraps the config; accept it directly so any run can be
    // replayed from its manifest.
    if (raw.is_object() && raw.contains("config") && raw.at("config").is_object() &&
        (raw.contains("outputs") || raw.contains("versions")))
        src = &raw.at("config");
    const json& j = *src;

    check_keys(j,
               {"command",        "model",          "L",
                "J",              "g_x",            "g_z",
                "dJ",             "V",              "filling",
                "boundary",       "grid",           "trash",
                "n_t",            "spsa",           "noise",
                "shots",          "calibration_shots", "seed",
                "out",            "workers",        "train_point",
                "source",         "symmetry_break", "threshold",
                "max_rounds",     "vqe_first_iters", "vqe_later_iters",
                "save_states",    "params_file",    "counts_file",
                "calibration_file"},
               "");

    RunConfig cfg;
    if (!j.contains("command")) fail("missing field 'command'");
    cfg.command = want_string(j.at("command"), "command");
    if (!kCommands.count(cfg.command)) fail("unknown command '" + cfg.command + "'");

    if (needs_model(cfg.command)) {
        if (!j.contains("model")) fail("missing field 'model'");
        const std::string kind = want_string(j.at("model"), "model");
        if (!j.contains("L")) fail("missing field 'L'");
        const int L = want_int(j.at("L"), "L");
        if (L < 2) fail("L must be at least 2");
        if (L > kMaxStateQubits) fail("L exceeds the statevector limit of 20 sites");
        if (runs_circuits(cfg.command) && L > kMaxCircuitQubits)
            fail("command '" + cfg.command + "' runs circuits; L is limited to 16 sites");

        if (kind == "tlfi") {
            cfg.model.kind = ModelSpec::Kind::Tlfi;
            cfg.model.tlfi.n_sites = L;
            for (const char* key : {"dJ", "V", "filling"})
                if (j.contains(key)) fail(std::string("field '") + key + "' is not a tlfi parameter");
            if (j.contains("J")) cfg.model.tlfi.coupling = want_number(j.at("J"), "J");
            if (j.contains("g_x")) cfg.model.tlfi.g_x = want_number(j.at("g_x"), "g_x");
            if (j.contains("g_z")) cfg.model.tlfi.g_z = want_number(j.at("g_z"), "g_z");
            if (j.contains("boundary")) {
                const std::string b = want_string(j.at("boundary"), "boundary");
                if (b == "periodic") cfg.model.tlfi.boundary = Boundary::Periodic;
                else if (b == "open") cfg.model.tlfi.boundary = Boundary::Open;
                else fail("boundary must be 'periodic' or 'open'");
            }
        } else if (kind == "debhm") {
            cfg.model.kind = ModelSpec::Kind::Debhm;
            cfg.model.debhm.n_sites = L;
            for (const char* key : {"g_x", "g_z", "boundary"})
                if (j.contains(key)) fail(std::string("field '") + key + "' is not a debhm parameter");
            if (j.contains("J")) cfg.model.debhm.hopping = want_number(j.at("J"), "J");
            if (j.contains("dJ")) cfg.model.debhm.delta_j = want_number(j.at("dJ"), "dJ");
            if (j.contains("V")) cfg.model.debhm.repulsion = want_number(j.at("V"), "V");
            if (j.contains("filling")) {
                cfg.model.debhm.filling = want_int(j.at("filling"), "filling");
                if (cfg.model.debhm.filling < 0 || cfg.model.debhm.filling > L)
                    fail("filling must lie in [0, L]");
            }
        } else {
            fail("model must be 'tlfi' or 'debhm'");
        }

        if (j.contains("grid")) {
            check_keys(j.at("grid"), {"axis1", "axis2"}, "grid");
            for (const char* key : {"axis1", "axis2"})
                if (!j.at("grid").contains(key)) fail(std::string("missing field 'grid.") + key + "'");
            cfg.grid.axis1 = parse_axis(j.at("grid").at("axis1"), "grid.axis1");
            cfg.grid.axis2 = parse_axis(j.at("grid").at("axis2"), "grid.axis2");
        } else {
            cfg.grid = cfg.model.default_grid();
        }
        try {
            cfg.grid.validate();
            cfg.model.get_field(cfg.grid.axis1.name);
            cfg.model.get_field(cfg.grid.axis2.name);
        } catch (const std::exception& e) {
            fail(std::string("grid: ") + e.what());
        }

        if (j.contains("trash") && j.contains("n_t"))
            fail("'trash' and 'n_t' are mutually exclusive");
        if (j.contains("trash")) {
            if (!j.at("trash").is_array() || j.at("trash").empty())
                fail("field 'trash' must be a non-empty array of sites");
            for (const auto& site : j.at("trash")) cfg.trash.push_back(want_int(site, "trash"));
            std::set<int> unique(cfg.trash.begin(), cfg.trash.end());
            if (unique.size() != cfg.trash.size()) fail("trash sites must be distinct");
            for (int site : cfg.trash)
                if (site < 1 || site > L) fail("trash sites must lie in [1, L]");
            if (static_cast<int>(cfg.trash.size()) >= L)
                fail("trash register must leave at least one site unmeasured");
        } else {
            int n_t = default_trash_count(L);
            if (j.contains("n_t")) {
                n_t = want_int(j.at("n_t"), "n_t");
                if (n_t < 1 || n_t >= L) fail("n_t must lie in [1, L-1]");
            }
            cfg.trash = default_trash_sites(L, n_t);
        }

        if (j.contains("train_point")) {
            const auto& tp = j.at("train_point");
            if (!tp.is_array() || tp.size() != 2)
                fail("field 'train_point' must be [axis1_value, axis2_value]");
            cfg.train_point = {want_number(tp[0], "train_point"), want_number(tp[1], "train_point")};
        } else {
            cfg.train_point = {cfg.grid.axis1.values.front(), cfg.grid.axis2.values.front()};
        }
    } else {
        for (const char* key : {"model", "L", "J", "g_x", "g_z", "dJ", "V", "filling", "boundary",
                                "grid", "trash", "n_t", "train_point"})
            if (j.contains(key))
                fail(std::string("field '") + key + "' does not apply to command '" + cfg.command + "'");
    }

    if (j.contains("spsa")) cfg.spsa = parse_spsa(j.at("spsa"));

    if (j.contains("noise")) {
        check_keys(j.at("noise"), {"p1", "p2", "readout"}, "noise");
        try {
            cfg.noise = noise_from_json(j.at("noise"));
        } catch (const std::exception& e) {
            fail(std::string("noise: ") + e.what());
        }
    }

    if (j.contains("shots")) {
        if (!j.at("shots").is_number_integer()) fail("field 'shots' must be an integer");
        cfg.shots = j.at("shots").get<std::int64_t>();
        if (cfg.shots < 0) fail("shots must be non-negative");
    } else if (cfg.noise) {
        cfg.shots = 1000;  // noisy costs need samples
    }
    if (cfg.noise && cfg.shots == 0) fail("a noise model needs a positive shot count");

    if (j.contains("calibration_shots")) {
        if (!j.at("calibration_shots").is_number_integer())
            fail("field 'calibration_shots' must be an integer");
        cfg.calibration_shots = j.at("calibration_shots").get<std::int64_t>();
        if (cfg.calibration_shots < 0) fail("calibration_shots must be non-negative");
    }

    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) fail("field 'seed' must be an integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("out")) cfg.out_dir = want_string(j.at("out"), "out");
    if (j.contains("workers")) {
        cfg.workers = want_int(j.at("workers"), "workers");
        if (cfg.workers < 0) fail("workers must be non-negative");
    }

    if (j.contains("source")) {
        const std::string s = want_string(j.at("source"), "source");
        if (s == "oracle") cfg.source = StateSource::Oracle;
        else if (s == "vqe") cfg.source = StateSource::Vqe;
        else fail("source must be 'oracle' or 'vqe'");
    }
    if (j.contains("symmetry_break")) {
        const std::string s = want_string(j.at("symmetry_break"), "symmetry_break");
        if (s == "none") cfg.symmetry_break = SymmetryBreak::None;
        else if (s == "plus") cfg.symmetry_break = SymmetryBreak::Plus;
        else if (s == "minus") cfg.symmetry_break = SymmetryBreak::Minus;
        else fail("symmetry_break must be 'none', 'plus' or 'minus'");
    }

    if (j.contains("threshold")) cfg.threshold = want_number(j.at("threshold"), "threshold");
    if (j.contains("max_rounds")) {
        cfg.max_rounds = want_int(j.at("max_rounds"), "max_rounds");
        if (cfg.max_rounds < 1) fail("max_rounds must be positive");
    }
    if (j.contains("vqe_first_iters")) {
        cfg.vqe_first_iters = want_int(j.at("vqe_first_iters"), "vqe_first_iters");
        if (cfg.vqe_first_iters < 1) fail("vqe_first_iters must be positive");
    }
    if (j.contains("vqe_later_iters")) {
        cfg.vqe_later_iters = want_int(j.at("vqe_later_iters"), "vqe_later_iters");
        if (cfg.vqe_later_iters < 1) fail("vqe_later_iters must be positive");
    }
    if (j.contains("save_states")) {
        if (!j.at("save_states").is_boolean()) fail("field 'save_states' must be a boolean");
        cfg.save_states = j.at("save_states").get<bool>();
    }
    if (j.contains("params_file")) cfg.params_file = want_string(j.at("params_file"), "params_file");
    if (j.contains("counts_file")) cfg.counts_file = want_string(j.at("counts_file"), "counts_file");
    if (j.contains("calibration_file"))
        cfg.calibration_file = want_string(j.at("calibration_file"), "calibration_file");

    if (cfg.command == "mitigate") {
        if (cfg.counts_file.empty()) fail("command 'mitigate' needs 'counts_file'");
        if (cfg.calibration_file.empty()) fail("command 'mitigate' needs 'calibration_file'");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(load_json_file(path)); }

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override must look like key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const json value = value_from_text(assignment.substr(eq + 1));

    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) throw std::invalid_argument("override has an empty path segment: " + assignment);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        if (!node->is_object()) *node = json::object();
        start = dot + 1;
    }
}

json RunConfig::resolved() const {
    json j;
    j["command"] = command;
    if (needs_model(command)) {
        j.update(model_to_json(model));
        j["grid"] = {{"axis1", {{"name", grid.axis1.name}, {"values", grid.axis1.values}}},
                     {"axis2", {{"name", grid.axis2.name}, {"values", grid.axis2.values}}}};
        j["trash"] = trash;
        j["train_point"] = {train_point.first, train_point.second};
    }
    json spsa_j = {{"max_iter", spsa.max_iter},
                   {"c", spsa.c},
                   {"alpha", spsa.alpha},
                   {"gamma", spsa.gamma}};
    if (spsa.a) spsa_j["a"] = *spsa.a;
    if (spsa.big_a) spsa_j["big_a"] = *spsa.big_a;
    j["spsa"] = std::move(spsa_j);
    if (noise) j["noise"] = noise_to_json(*noise);
    j["shots"] = shots;
    j["calibration_shots"] = calibration_shots;
    j["seed"] = seed;
    j["workers"] = workers;
    j["source"] = source == StateSource::Oracle ? "oracle" : "vqe";
    j["symmetry_break"] = symmetry_break == SymmetryBreak::None
                              ? "none"
                              : (symmetry_break == SymmetryBreak::Plus ? "plus" : "minus");
    j["threshold"] = threshold;
    j["max_rounds"] = max_rounds;
    j["vqe_first_iters"] = vqe_first_iters;
    j["vqe_later_iters"] = vqe_later_iters;
    j["save_states"] = save_states;
    if (!params_file.empty()) j["params_file"] = params_file;
    if (!counts_file.empty()) j["counts_file"] = counts_file;
    if (!calibration_file.empty()) j["calibration_file"] = calibration_file;
    return j;
}

SweepSettings RunConfig::sweep_settings() const {
    SweepSettings s;
    s.trash = trash;
    s.spsa = spsa;
    s.eval_shots = shots;
    s.noise = noise;
    s.source = source;
    s.symmetry_break = symmetry_break;
    s.vqe_first_iters = vqe_first_iters;
    s.vqe_later_iters = vqe_later_iters;
    s.workers = resolved_workers();
    s.master_seed = seed;
    return s;
}

int RunConfig::resolved_workers() const {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace vqad
