// Copyright 2026 The BSQN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bsqn/estimators.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/noise.hpp"

namespace bsqn::harness {

using Json = nlohmann::json;

/// Invalid configuration. The message starts with the offending field path.
class ConfigError : public std::invalid_argument {
   public:
    ConfigError(const std::string &field, const std::string &problem)
        : std::invalid_argument(field + ": " + problem), field_(field) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

enum class SweepAxis { Ns, F, n, M };

inline std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Ns:
            return "Ns";
        case SweepAxis::F:
            return "F";
        case SweepAxis::n:
            return "n";
        default:
            return "M";
    }
}

struct GraphSpec {
    std::string type = "complete";
    size_t n = 0;
    std::string file;

    Graph build(size_t order) const {
        if (type == "complete") {
            return complete_graph(order);
        }
        if (type == "path") {
            return path_graph(order);
        }
        std::ifstream in(file);
        if (!in) {
            throw ConfigError("graph.file", "cannot open '" + file + "'");
        }
        return read_edge_list(in);
    }
};

struct NoiseSpec {
    std::string model;
    std::optional<double> F;
    std::optional<double> mu;
    std::optional<std::string> b_star;
    std::optional<RealVector> a;

    /// Builds the state at order n. A swept fidelity overrides F (and mu).
    DiagonalState build(size_t n, std::optional<double> fidelity_override = std::nullopt) const {
        std::optional<double> fid = fidelity_override ? fidelity_override : F;
        if (model == "depolarizing") {
            return DiagonalState::depolarizing(n, *fid);
        }
        if (model == "dephasing_iid") {
            if (fidelity_override || !mu) {
                return DiagonalState::dephasing_with_fidelity(n, *fid);
            }
            return DiagonalState::dephasing_iid(n, *mu);
        }
        if (model == "bimodal") {
            return DiagonalState::bimodal(n, *fid, b_star ? BitVec::from_string(*b_star) : BitVec::ones(n));
        }
        return DiagonalState::explicit_state(*a);
    }
};

struct ProtocolSpec {
    std::string kind;
    DgeStrategy strategy = DgeStrategy::CompleteOverlapY;
    std::optional<size_t> M;
    std::optional<double> M_per_qubit;
    std::optional<std::string> target_b;
    std::optional<std::string> sign_reference;
    std::string sampler = "fast";

    std::string label() const {
        if (kind == "dge") {
            return "dge/" + to_string(strategy);
        }
        return kind;
    }

    size_t resolve_M(size_t n, std::optional<size_t> swept) const {
        if (swept) {
            return *swept;
        }
        if (M) {
            return *M;
        }
        if (M_per_qubit) {
            return static_cast<size_t>(std::llround(*M_per_qubit * static_cast<double>(n)));
        }
        return 0;
    }
};

struct ExperimentConfig {
    std::string name = "experiment";
    GraphSpec graph;
    std::vector<NoiseSpec> noises;
    std::vector<ProtocolSpec> protocols;
    SweepAxis axis = SweepAxis::Ns;
    std::vector<double> sweep_values;
    std::optional<uint64_t> Ns;
    std::optional<double> F;
    std::optional<size_t> M;
    size_t trials = 1;
    std::optional<size_t> trials_full;
    uint64_t seed = 0;
    std::string output = "results";

    /// Switches to the paper-scale trial count when one is configured.
    void apply_full() {
        if (trials_full) {
            trials = *trials_full;
        }
    }
};

namespace detail {

inline double number(const Json &j, const std::string &field) {
    if (!j.is_number()) {
        throw ConfigError(field, "expected a number");
    }
    return j.get<double>();
}

inline uint64_t positive_integer(const Json &j, const std::string &field) {
    if (!j.is_number()) {
        throw ConfigError(field, "expected a positive integer");
    }
    double v = j.get<double>();
    if (!(v >= 1) || v != std::floor(v) || v > 9.0e15) {
        throw ConfigError(field, "expected a positive integer");
    }
    return static_cast<uint64_t>(v);
}

inline double probability(const Json &j, const std::string &field) {
    double v = number(j, field);
    if (!(v >= 0 && v <= 1)) {
        throw ConfigError(field, "must lie in [0, 1]");
    }
    return v;
}

inline std::string text(const Json &j, const std::string &field) {
    if (!j.is_string()) {
        throw ConfigError(field, "expected a string");
    }
    return j.get<std::string>();
}

inline void check_keys(const Json &obj, const std::string &field, std::initializer_list<const char *> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char *k : allowed) {
            known |= it.key() == k;
        }
        if (!known) {
            throw ConfigError(field + "." + it.key(), "unknown key");
        }
    }
}

inline std::string resolve_path(const std::string &path, const std::filesystem::path &base_dir) {
    std::filesystem::path p(path);
    if (p.is_relative() && !base_dir.empty()) {
        p = base_dir / p;
    }
    return p.string();
}

inline RealVector read_vector_file(const std::string &path, const std::string &field) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(field, "cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();
    Json parsed = Json::parse(body, nullptr, false);
    RealVector out;
    if (!parsed.is_discarded() && parsed.is_array()) {
        for (const auto &v : parsed) {
            out.push_back(number(v, field));
        }
        return out;
    }
    std::istringstream words(body);
    std::string word;
    while (words >> word) {
        try {
            out.push_back(std::stod(word));
        } catch (const std::exception &) {
            throw ConfigError(field, "'" + path + "' holds a non-numeric entry '" + word + "'");
        }
    }
    return out;
}

inline bool is_bit_string(const std::string &s) {
    return !s.empty() && s.find_first_not_of("01") == std::string::npos;
}

inline NoiseSpec parse_noise(const Json &j, const std::string &field, const std::filesystem::path &base_dir) {
    if (!j.is_object()) {
        throw ConfigError(field, "expected an object");
    }
    check_keys(j, field, {"model", "F", "mu", "b_star", "a"});
    if (!j.contains("model")) {
        throw ConfigError(field + ".model", "missing");
    }
    NoiseSpec spec;
    spec.model = text(j["model"], field + ".model");
    if (spec.model != "depolarizing" && spec.model != "dephasing_iid" && spec.model != "bimodal" &&
        spec.model != "explicit") {
        throw ConfigError(field + ".model",
                          "unknown model '" + spec.model + "' (depolarizing, dephasing_iid, bimodal, explicit)");
    }
    if (j.contains("F")) {
        spec.F = probability(j["F"], field + ".F");
    }
    if (j.contains("mu")) {
        if (spec.model != "dephasing_iid") {
            throw ConfigError(field + ".mu", "only valid for dephasing_iid");
        }
        spec.mu = probability(j["mu"], field + ".mu");
    }
    if (j.contains("b_star")) {
        if (spec.model != "bimodal") {
            throw ConfigError(field + ".b_star", "only valid for bimodal");
        }
        spec.b_star = text(j["b_star"], field + ".b_star");
        if (!is_bit_string(*spec.b_star)) {
            throw ConfigError(field + ".b_star", "expected a bit string");
        }
        if (spec.b_star->find('1') == std::string::npos) {
            throw ConfigError(field + ".b_star", "must be nonzero");
        }
    }
    if (j.contains("a")) {
        if (spec.model != "explicit") {
            throw ConfigError(field + ".a", "only valid for explicit");
        }
        const Json &a = j["a"];
        RealVector values;
        if (a.is_array()) {
            for (size_t k = 0; k < a.size(); k++) {
                values.push_back(number(a[k], field + ".a[" + std::to_string(k) + "]"));
            }
        } else if (a.is_string()) {
            values = read_vector_file(resolve_path(a.get<std::string>(), base_dir), field + ".a");
        } else {
            throw ConfigError(field + ".a", "expected an array or a file path");
        }
        try {
            DiagonalState::explicit_state(values);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(field + ".a", e.what());
        }
        spec.a = std::move(values);
    }
    if (spec.model == "explicit" && !spec.a) {
        throw ConfigError(field + ".a", "missing (explicit model needs the vector a)");
    }
    if (spec.model == "explicit" && spec.F) {
        throw ConfigError(field + ".F", "explicit model takes its fidelity from a");
    }
    return spec;
}

inline ProtocolSpec parse_protocol(const Json &j, const std::string &field) {
    ProtocolSpec spec;
    if (j.is_string()) {
        spec.kind = j.get<std::string>();
    } else if (j.is_object()) {
        check_keys(j, field, {"name", "strategy", "M", "M_per_qubit", "target_b", "sign_reference", "sampler"});
        if (!j.contains("name")) {
            throw ConfigError(field + ".name", "missing");
        }
        spec.kind = text(j["name"], field + ".name");
        if (j.contains("strategy")) {
            std::string s = text(j["strategy"], field + ".strategy");
            try {
                spec.strategy = parse_dge_strategy(s);
            } catch (const std::invalid_argument &) {
                throw ConfigError(field + ".strategy",
                                  "unknown strategy '" + s + "' (Naive, CompleteOverlapY, CompleteDisjointY)");
            }
        }
        if (j.contains("M")) {
            spec.M = positive_integer(j["M"], field + ".M");
        }
        if (j.contains("M_per_qubit")) {
            double v = number(j["M_per_qubit"], field + ".M_per_qubit");
            if (!(v > 0)) {
                throw ConfigError(field + ".M_per_qubit", "must be positive");
            }
            spec.M_per_qubit = v;
        }
        if (j.contains("target_b")) {
            spec.target_b = text(j["target_b"], field + ".target_b");
            if (!is_bit_string(*spec.target_b)) {
                throw ConfigError(field + ".target_b", "expected a bit string");
            }
        }
        if (j.contains("sign_reference")) {
            spec.sign_reference = text(j["sign_reference"], field + ".sign_reference");
            if (!is_bit_string(*spec.sign_reference)) {
                throw ConfigError(field + ".sign_reference", "expected a bit string");
            }
        }
        if (j.contains("sampler")) {
            spec.sampler = text(j["sampler"], field + ".sampler");
            if (spec.sampler != "fast" && spec.sampler != "circuit") {
                throw ConfigError(field + ".sampler", "expected 'fast' or 'circuit'");
            }
        }
    } else {
        throw ConfigError(field, "expected a protocol name or object");
    }
    if (spec.kind != "bsqn_full" && spec.kind != "bsqn_random" && spec.kind != "dge") {
        throw ConfigError(field, "unknown protocol '" + spec.kind + "' (bsqn_full, bsqn_random, dge)");
    }
    if (spec.kind != "bsqn_random" && (spec.M || spec.M_per_qubit || spec.target_b)) {
        throw ConfigError(field, "M, M_per_qubit and target_b apply only to bsqn_random");
    }
    if (spec.M && spec.M_per_qubit) {
        throw ConfigError(field, "give M or M_per_qubit, not both");
    }
    if (spec.kind == "dge" && spec.sign_reference) {
        throw ConfigError(field + ".sign_reference", "DGE needs no sign reference");
    }
    return spec;
}

}  // namespace detail

/// Parses and validates a configuration document. Relative file paths are
/// resolved against `base_dir`.
inline ExperimentConfig parse_config(const Json &j, const std::filesystem::path &base_dir = {}) {
    using namespace detail;
    if (!j.is_object()) {
        throw ConfigError("config", "expected a JSON object");
    }
    check_keys(j, "config", {"name", "graph", "noise", "protocol", "protocols", "sweep", "Ns", "F", "M", "trials",
                             "trials_full", "seed", "output", "description"});
    ExperimentConfig cfg;
    if (j.contains("name")) {
        cfg.name = text(j["name"], "name");
        if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
            throw ConfigError("name", "must be a non-empty file stem");
        }
    }

    if (!j.contains("graph")) {
        throw ConfigError("graph", "missing");
    }
    const Json &g = j["graph"];
    if (!g.is_object()) {
        throw ConfigError("graph", "expected an object");
    }
    check_keys(g, "graph", {"type", "n", "file"});
    if (!g.contains("type")) {
        throw ConfigError("graph.type", "missing");
    }
    cfg.graph.type = text(g["type"], "graph.type");
    if (cfg.graph.type != "complete" && cfg.graph.type != "path" && cfg.graph.type != "edges") {
        throw ConfigError("graph.type", "unknown graph type '" + cfg.graph.type + "' (complete, path, edges)");
    }
    if (g.contains("n")) {
        cfg.graph.n = positive_integer(g["n"], "graph.n");
    }
    if (cfg.graph.type == "edges") {
        if (!g.contains("file")) {
            throw ConfigError("graph.file", "missing (edges graphs are read from a file)");
        }
        cfg.graph.file = resolve_path(text(g["file"], "graph.file"), base_dir);
        std::ifstream in(cfg.graph.file);
        if (!in) {
            throw ConfigError("graph.file", "cannot open '" + cfg.graph.file + "'");
        }
        try {
            cfg.graph.n = read_edge_list(in).n();
        } catch (const std::exception &e) {
            throw ConfigError("graph.file", e.what());
        }
    }

    if (!j.contains("noise")) {
        throw ConfigError("noise", "missing");
    }
    if (j["noise"].is_array()) {
        for (size_t k = 0; k < j["noise"].size(); k++) {
            cfg.noises.push_back(parse_noise(j["noise"][k], "noise[" + std::to_string(k) + "]", base_dir));
        }
        if (cfg.noises.empty()) {
            throw ConfigError("noise", "empty list");
        }
    } else {
        cfg.noises.push_back(parse_noise(j["noise"], "noise", base_dir));
    }

    if (j.contains("protocol") == j.contains("protocols")) {
        throw ConfigError("protocol", "give exactly one of 'protocol' or 'protocols'");
    }
    if (j.contains("protocol")) {
        cfg.protocols.push_back(parse_protocol(j["protocol"], "protocol"));
    } else {
        const Json &list = j["protocols"];
        if (!list.is_array() || list.empty()) {
            throw ConfigError("protocols", "expected a non-empty array");
        }
        for (size_t k = 0; k < list.size(); k++) {
            cfg.protocols.push_back(parse_protocol(list[k], "protocols[" + std::to_string(k) + "]"));
        }
    }

    if (!j.contains("sweep")) {
        throw ConfigError("sweep", "missing (exactly one sweep axis is required)");
    }
    const Json &sw = j["sweep"];
    if (!sw.is_object()) {
        throw ConfigError("sweep", "expected an object with 'axis' and 'values'");
    }
    check_keys(sw, "sweep", {"axis", "values"});
    if (!sw.contains("axis")) {
        throw ConfigError("sweep.axis", "missing");
    }
    if (sw["axis"].is_array()) {
        throw ConfigError("sweep.axis", "exactly one sweep axis is allowed");
    }
    std::string axis = text(sw["axis"], "sweep.axis");
    if (axis == "Ns") {
        cfg.axis = SweepAxis::Ns;
    } else if (axis == "F") {
        cfg.axis = SweepAxis::F;
    } else if (axis == "n") {
        cfg.axis = SweepAxis::n;
    } else if (axis == "M") {
        cfg.axis = SweepAxis::M;
    } else {
        throw ConfigError("sweep.axis", "unknown axis '" + axis + "' (Ns, F, n, M)");
    }
    if (!sw.contains("values") || !sw["values"].is_array() || sw["values"].empty()) {
        throw ConfigError("sweep.values", "expected a non-empty array");
    }
    for (size_t k = 0; k < sw["values"].size(); k++) {
        std::string f = "sweep.values[" + std::to_string(k) + "]";
        if (cfg.axis == SweepAxis::F) {
            cfg.sweep_values.push_back(probability(sw["values"][k], f));
        } else {
            cfg.sweep_values.push_back(static_cast<double>(positive_integer(sw["values"][k], f)));
        }
    }

    auto fixed = [&](const char *key, SweepAxis owner) {
        if (j.contains(key) && cfg.axis == owner) {
            throw ConfigError(key, "is the sweep axis; set it only in sweep.values");
        }
        return j.contains(key);
    };
    if (fixed("Ns", SweepAxis::Ns)) {
        cfg.Ns = positive_integer(j["Ns"], "Ns");
    }
    if (fixed("F", SweepAxis::F)) {
        cfg.F = probability(j["F"], "F");
    }
    if (fixed("M", SweepAxis::M)) {
        cfg.M = positive_integer(j["M"], "M");
    }
    if (cfg.axis != SweepAxis::Ns && !cfg.Ns) {
        throw ConfigError("Ns", "missing (required unless Ns is the sweep axis)");
    }
    if (cfg.axis == SweepAxis::n) {
        if (g.contains("n")) {
            throw ConfigError("graph.n", "is the sweep axis; set it only in sweep.values");
        }
        if (cfg.graph.type == "edges") {
            throw ConfigError("sweep.axis", "an edge-list graph has a fixed order and cannot sweep n");
        }
    } else if (cfg.graph.n == 0) {
        throw ConfigError("graph.n", "missing");
    }

    for (size_t k = 0; k < cfg.noises.size(); k++) {
        std::string f = cfg.noises.size() == 1 && !j["noise"].is_array() ? "noise" : "noise[" + std::to_string(k) + "]";
        auto &noise = cfg.noises[k];
        if (noise.model == "explicit") {
            if (cfg.axis == SweepAxis::F) {
                throw ConfigError(f + ".model", "explicit noise cannot follow an F sweep");
            }
            if (cfg.axis == SweepAxis::n) {
                throw ConfigError(f + ".model", "explicit noise has a fixed order and cannot follow an n sweep");
            }
            if (noise.a->size() != (size_t{1} << cfg.graph.n)) {
                throw ConfigError(f + ".a", "length must be 2^n = " + std::to_string(size_t{1} << cfg.graph.n));
            }
            continue;
        }
        if (cfg.F && !noise.F && !noise.mu) {
            noise.F = cfg.F;
        }
        if (cfg.axis != SweepAxis::F && !noise.F && !noise.mu) {
            throw ConfigError(f + ".F", "missing (set F here, at top level, or sweep it)");
        }
        if (noise.model == "bimodal" && noise.b_star) {
            if (cfg.axis == SweepAxis::n) {
                throw ConfigError(f + ".b_star", "a fixed b_star cannot follow an n sweep");
            }
            if (noise.b_star->size() != cfg.graph.n) {
                throw ConfigError(f + ".b_star", "length must equal n");
            }
        }
    }

    bool all_random = true;
    for (size_t k = 0; k < cfg.protocols.size(); k++) {
        std::string f = j.contains("protocol") ? "protocol" : "protocols[" + std::to_string(k) + "]";
        auto &p = cfg.protocols[k];
        all_random &= p.kind == "bsqn_random";
        if (p.kind == "bsqn_random" && cfg.axis != SweepAxis::M && !p.M && !p.M_per_qubit) {
            if (!cfg.M) {
                throw ConfigError(f + ".M", "missing (bsqn_random needs M, M_per_qubit, or an M sweep)");
            }
            p.M = cfg.M;
        }
        if (p.kind == "bsqn_random" && cfg.axis == SweepAxis::M && (p.M || p.M_per_qubit)) {
            throw ConfigError(f + ".M", "M is the sweep axis");
        }
        for (const auto *bits : {&p.target_b, &p.sign_reference}) {
            if (*bits) {
                if (cfg.axis == SweepAxis::n) {
                    throw ConfigError(f, "fixed bit strings cannot follow an n sweep");
                }
                if ((*bits)->size() != cfg.graph.n) {
                    throw ConfigError(f, "target_b and sign_reference must have length n");
                }
            }
        }
        if (p.kind == "dge" && p.strategy != DgeStrategy::Naive && cfg.graph.type != "complete") {
            throw ConfigError(f + ".strategy", to_string(p.strategy) + " requires a complete graph");
        }
        if (p.sampler == "circuit" && p.kind == "dge") {
            throw ConfigError(f + ".sampler", "applies only to Bell-sampling protocols");
        }
        auto check_order = [&](size_t n, const std::string &where) {
            if (p.kind == "bsqn_full" && n > kMaxDenseHistogramOrder) {
                throw ConfigError(where, "bsqn_full is limited to n <= " + std::to_string(kMaxDenseHistogramOrder));
            }
            if (p.kind == "dge" && n > kMaxDgeOrder) {
                throw ConfigError(where, "dge is limited to n <= " + std::to_string(kMaxDgeOrder));
            }
            if (p.kind == "dge" && p.strategy == DgeStrategy::CompleteDisjointY && n % 2) {
                throw ConfigError(where, "CompleteDisjointY requires even n");
            }
        };
        if (cfg.axis == SweepAxis::n) {
            for (size_t v = 0; v < cfg.sweep_values.size(); v++) {
                check_order(static_cast<size_t>(cfg.sweep_values[v]), "sweep.values[" + std::to_string(v) + "]");
            }
        } else {
            check_order(cfg.graph.n, "graph.n");
        }
    }
    if (cfg.axis == SweepAxis::M && !all_random) {
        throw ConfigError("sweep.axis", "an M sweep needs every protocol to be bsqn_random");
    }

    if (!j.contains("trials")) {
        throw ConfigError("trials", "missing");
    }
    cfg.trials = positive_integer(j["trials"], "trials");
    if (j.contains("trials_full")) {
        cfg.trials_full = positive_integer(j["trials_full"], "trials_full");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError("seed", "expected a non-negative integer");
        }
        cfg.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("output")) {
        cfg.output = text(j["output"], "output");
    }
    return cfg;
}

/// Parses "complete:<n>", "path:<n>" or "edges:<file>".
inline GraphSpec parse_graph_spec(const std::string &text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("--graph", "expected complete:<n>, path:<n> or edges:<file>");
    }
    GraphSpec spec;
    spec.type = text.substr(0, colon);
    std::string arg = text.substr(colon + 1);
    if (spec.type == "edges") {
        spec.file = arg;
        std::ifstream in(arg);
        if (!in) {
            throw ConfigError("--graph", "cannot open '" + arg + "'");
        }
        try {
            spec.n = read_edge_list(in).n();
        } catch (const std::exception &e) {
            throw ConfigError("--graph", e.what());
        }
        return spec;
    }
    if (spec.type != "complete" && spec.type != "path") {
        throw ConfigError("--graph", "unknown graph type '" + spec.type + "'");
    }
    size_t used = 0;
    long long n = -1;
    try {
        n = std::stoll(arg, &used);
    } catch (const std::exception &) {
    }
    if (n < 1 || used != arg.size()) {
        throw ConfigError("--graph", "expected a positive order after '" + spec.type + ":'");
    }
    spec.n = static_cast<size_t>(n);
    return spec;
}

/// Parses "<model>:key=value,key=value". Explicit vectors are written
/// "a=0.7/0.1/0.1/0.1" or "file=<path>".
inline NoiseSpec parse_noise_spec(const std::string &text) {
    size_t colon = text.find(':');
    Json j = {{"model", text.substr(0, colon)}};
    if (colon != std::string::npos) {
        std::istringstream items(text.substr(colon + 1));
        std::string item;
        while (std::getline(items, item, ',')) {
            size_t eq = item.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--noise", "expected key=value, got '" + item + "'");
            }
            std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            if (key == "b_star") {
                j[key] = value;
            } else if (key == "file") {
                j["a"] = value;
            } else if (key == "a") {
                Json values = Json::array();
                std::istringstream parts(value);
                std::string part;
                while (std::getline(parts, part, '/')) {
                    try {
                        values.push_back(std::stod(part));
                    } catch (const std::exception &) {
                        throw ConfigError("--noise.a", "non-numeric entry '" + part + "'");
                    }
                }
                j["a"] = values;
            } else {
                try {
                    j[key] = std::stod(value);
                } catch (const std::exception &) {
                    throw ConfigError("--noise." + key, "expected a number, got '" + value + "'");
                }
            }
        }
    }
    return detail::parse_noise(j, "--noise", {});
}

/// Reads and validates a JSON configuration file.
inline ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    }
    Json j = Json::parse(in, nullptr, false, true);
    if (j.is_discarded()) {
        throw ConfigError("config", "'" + path.string() + "' is not valid JSON");
    }
    ExperimentConfig cfg = parse_config(j, path.parent_path());
    if (!j.contains("name")) {
        cfg.name = path.stem().string();
    }
    return cfg;
}

}  // namespace bsqn::harness
