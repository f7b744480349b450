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

// Equivalence gates between the fast estimators and the dense reference
// implementations.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsqn/bell_sampler.hpp"
#include "bsqn/estimators.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/noise.hpp"
#include "bsqn/oracle.hpp"
#include "bsqn/rng.hpp"
#include "bsqn/stats.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn::harness {

struct GateResult {
    explicit GateResult(std::string gate_name = {}) : name(std::move(gate_name)) {
    }

    std::string name;
    bool passed = true;
    /// Largest absolute deviation (identity gates) or 0 for statistical gates.
    double max_error = 0;
    /// Smallest chi-square p-value seen (statistical gates), else NaN.
    double min_p_value = std::numeric_limits<double>::quiet_NaN();
    size_t checks = 0;
    double seconds = 0;
    std::string detail;
};

struct OracleReport {
    std::vector<GateResult> gates;

    bool passed() const {
        return std::all_of(gates.begin(), gates.end(), [](const GateResult &g) { return g.passed; });
    }
    const GateResult *find(const std::string &name) const {
        for (const auto &g : gates) {
            if (g.name == name) {
                return &g;
            }
        }
        return nullptr;
    }
};

struct OracleCheckOptions {
    uint64_t seed = 20260101;
    double tolerance = 1e-10;
    double p_threshold = 1e-3;
    uint64_t shots = 100000;
    size_t explicit_states = 20;
    size_t max_lemma_order = 5;
    size_t max_bell_order = 4;
    /// Graphs used by the sampling gates at order n.
    std::function<Graph(size_t)> graph_for = complete_graph;
};

namespace detail {

template <typename URBG>
RealVector random_distribution(size_t n, URBG &rng) {
    RealVector a(size_t{1} << n);
    std::exponential_distribution<double> draw(1.0);
    double total = 0;
    for (auto &v : a) {
        v = draw(rng);
        total += v;
    }
    for (auto &v : a) {
        v /= total;
    }
    return a;
}

/// Random distribution whose entry at `ref` exceeds 1/2.
template <typename URBG>
RealVector random_dominated_distribution(size_t n, uint64_t ref, URBG &rng) {
    RealVector a = random_distribution(n, rng);
    double heavy = 0.55 + 0.4 * uniform01(rng);
    for (auto &v : a) {
        v *= 1 - heavy;
    }
    a[ref] += heavy;
    return a;
}

template <typename URBG>
Graph random_graph(size_t n, URBG &rng) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if (coin(rng)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return graph_from_edges(n, edges);
}

/// Pr(s) = sum_b a_b a_{b XOR s}.
inline RealVector convolution_law(const RealVector &a) {
    RealVector out(a.size(), 0.0);
    for (size_t s = 0; s < a.size(); s++) {
        for (size_t b = 0; b < a.size(); b++) {
            out[s] += a[b] * a[b ^ s];
        }
    }
    return out;
}

inline std::vector<DiagonalState> gate_models(size_t n) {
    BitVec star = BitVec::ones(n);
    return {DiagonalState::depolarizing(n, 0.7), DiagonalState::dephasing_iid(n, 0.15),
            DiagonalState::bimodal(n, 0.6, star)};
}

class Timer {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void note_error(GateResult &gate, double error, double tolerance, const std::string &where) {
    gate.checks++;
    if (!(error <= tolerance) && gate.passed) {
        std::ostringstream msg;
        msg << "first failure at " << where << " (error " << error << ")";
        gate.detail = msg.str();
        gate.passed = false;
    }
    if (std::isnan(error) || error > gate.max_error) {
        gate.max_error = std::isnan(error) ? std::numeric_limits<double>::infinity() : error;
    }
}

inline void note_p_value(GateResult &gate, double p, double threshold, const std::string &where) {
    gate.checks++;
    if (std::isnan(gate.min_p_value) || p < gate.min_p_value) {
        gate.min_p_value = p;
    }
    if (!(p > threshold) && gate.passed) {
        std::ostringstream msg;
        msg << "first failure at " << where << " (p = " << p << ")";
        gate.detail = msg.str();
        gate.passed = false;
    }
}

}  // namespace detail

/// w_b = Tr(rho prod_j S_j^{b_j}) on the dense density matrix equals
/// (WHT a)_b, and a is recovered both from w and from <Phi_b|rho|Phi_b>.
inline std::vector<GateResult> check_lemma1_and_round_trip(const OracleCheckOptions &opt) {
    GateResult lemma{"lemma1"}, round{"round_trip"};
    detail::Timer timer;
    Rng rng(opt.seed ^ 0x1E11A1);
    for (size_t n = 1; n <= opt.max_lemma_order; n++) {
        for (size_t k = 0; k < opt.explicit_states; k++) {
            Graph g = k % 2 ? complete_graph(n) : detail::random_graph(n, rng);
            RealVector a = detail::random_distribution(n, rng);
            std::string where = "n=" + std::to_string(n) + " state=" + std::to_string(k);
            oracle::DensityMatrix rho = oracle::dense_diagonal_density(g, a);
            RealVector w = w_from_a(a);
            DiagonalState state = DiagonalState::explicit_state(a);
            for (uint64_t b = 0; b < a.size(); b++) {
                BitVec bv = BitVec::from_uint64(n, b);
                double dense = oracle::dense_stabilizer_expectation(rho, g, bv);
                detail::note_error(lemma, std::abs(dense - w[b]), opt.tolerance, where);
                detail::note_error(lemma, std::abs(state.expectation(bv) - w[b]), opt.tolerance, where);
            }
            RealVector back = a_from_w(w);
            RealVector diag = oracle::dense_diagonal_elements(g, rho);
            for (uint64_t b = 0; b < a.size(); b++) {
                detail::note_error(round, std::abs(back[b] - a[b]), opt.tolerance, where);
                detail::note_error(round, std::abs(diag[b] - a[b]), opt.tolerance, where);
            }
        }
    }
    lemma.seconds = round.seconds = timer.seconds();
    return {lemma, round};
}

/// With a_ref > 1/2, sgn w_i = (-1)^{ref . i}; and exact c = w^2 fed through
/// the full estimator with that reference reproduces a.
inline GateResult check_sign_rule(const OracleCheckOptions &opt) {
    GateResult gate{"sign_rule"};
    detail::Timer timer;
    Rng rng(opt.seed ^ 0x5167);
    auto check_state = [&](const DiagonalState &state, const BitVec &ref, const std::string &where) {
        const size_t n = state.n();
        SignRule rule = SignRule::with_reference(ref);
        CHatVector c;
        c.values.resize(size_t{1} << n);
        for (uint64_t i = 0; i < c.values.size(); i++) {
            double w = state.expectation(BitVec::from_uint64(n, i));
            double signed_w = rule.sign_flipped(i) ? -w : w;
            detail::note_error(gate, signed_w > 0 ? 0.0 : std::abs(signed_w) + 1, 0.0,
                               where + " i=" + std::to_string(i));
            c.values[i] = w * w;
        }
        c.unclipped = c.values;
        RealVector a_hat = bsqn_full(c, rule).a_hat;
        RealVector a = state.exact_a();
        for (uint64_t b = 0; b < a.size(); b++) {
            detail::note_error(gate, std::abs(a_hat[b] - a[b]), opt.tolerance, where + " reconstruction");
        }
    };
    for (size_t n = 1; n <= 8; n++) {
        BitVec zero(n);
        std::string tag = "n=" + std::to_string(n);
        for (double F : {0.51, 0.9}) {
            check_state(DiagonalState::depolarizing(n, F), zero, tag + " depolarizing");
            check_state(DiagonalState::dephasing_with_fidelity(n, F), zero, tag + " dephasing_iid");
            BitVec star(n);
            randomize(star, rng);
            if (star.none()) {
                star.set(0, true);
            }
            check_state(DiagonalState::bimodal(n, F, star), zero, tag + " bimodal");
        }
        for (size_t k = 0; k < 5; k++) {
            uint64_t ref = std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << n) - 1)(rng);
            RealVector a = detail::random_dominated_distribution(n, ref, rng);
            check_state(DiagonalState::explicit_state(a), BitVec::from_uint64(n, ref),
                        tag + " explicit ref=" + std::to_string(ref));
        }
    }
    gate.seconds = timer.seconds();
    return gate;
}

/// <phi_beta| P_b (x) P_b |phi_beta> = (-1)^{b . s(beta)} for every Bell label.
inline GateResult check_eigenvalue_table(const OracleCheckOptions &opt) {
    GateResult gate{"eigenvalue_table"};
    detail::Timer timer;
    Rng rng(opt.seed ^ 0xE16E);
    for (size_t n = 1; n <= opt.max_bell_order; n++) {
        for (const Graph &g : {opt.graph_for(n), path_graph(n), detail::random_graph(n, rng)}) {
            for (uint64_t beta = 0; beta < (uint64_t{1} << (2 * n)); beta++) {
                BitVec s = syndrome_from_outcome(g, BellOutcome{BitVec::from_uint64(2 * n, beta)});
                for (uint64_t b = 0; b < (uint64_t{1} << n); b++) {
                    BitVec bv = BitVec::from_uint64(n, b);
                    double dense = oracle::dense_pair_eigenvalue(n, beta, stabilizer_element(g, bv));
                    detail::note_error(gate, std::abs(dense - (dot(bv, s) ? -1.0 : 1.0)), opt.tolerance,
                                       "n=" + std::to_string(n) + " beta=" + std::to_string(beta));
                }
            }
        }
    }
    gate.seconds = timer.seconds();
    return gate;
}

/// The dense two-copy Bell distribution, reduced to syndromes, equals a * a.
inline GateResult check_bell_distribution(const OracleCheckOptions &opt) {
    GateResult gate{"bell_distribution"};
    detail::Timer timer;
    Rng rng(opt.seed ^ 0xBE11);
    for (size_t n = 1; n <= opt.max_bell_order; n++) {
        std::vector<RealVector> vectors;
        for (const auto &state : detail::gate_models(n)) {
            vectors.push_back(state.exact_a());
        }
        for (size_t k = 0; k < 3; k++) {
            vectors.push_back(detail::random_distribution(n, rng));
        }
        for (size_t v = 0; v < vectors.size(); v++) {
            Graph g = opt.graph_for(n);
            RealVector law = detail::convolution_law(vectors[v]);
            RealVector dense = oracle::dense_syndrome_distribution(g, vectors[v]);
            for (size_t s = 0; s < law.size(); s++) {
                detail::note_error(gate, std::abs(dense[s] - law[s]), opt.tolerance,
                                   "n=" + std::to_string(n) + " vector=" + std::to_string(v));
            }
        }
    }
    gate.seconds = timer.seconds();
    return gate;
}

/// Circuit-path and fast-path syndrome histograms against the a * a law and
/// against each other.
inline GateResult check_syndrome_law(const OracleCheckOptions &opt) {
    GateResult gate{"syndrome_law"};
    detail::Timer timer;
    for (size_t n = 1; n <= opt.max_bell_order; n++) {
        Graph g = opt.graph_for(n);
        auto models = detail::gate_models(n);
        for (size_t m = 0; m < models.size(); m++) {
            const auto &state = models[m];
            std::string where = "n=" + std::to_string(n) + " " + state.model_name();
            RealVector law = detail::convolution_law(state.exact_a());
            Rng circuit_rng(derive_seed(opt.seed, "circuit/" + where, 0));
            Rng fast_rng(derive_seed(opt.seed, "fast/" + where, 0));
            RealVector circuit = sample_syndromes_circuit(g, state, opt.shots, circuit_rng).counts_vector();
            RealVector fast = sample_syndromes_fast(g, state, opt.shots, fast_rng).counts_vector();
            detail::note_p_value(gate, stats::chi_square_gof(circuit, law).p_value, opt.p_threshold,
                                 where + " circuit vs law");
            detail::note_p_value(gate, stats::chi_square_gof(fast, law).p_value, opt.p_threshold,
                                 where + " fast vs law");
            detail::note_p_value(gate, stats::chi_square_two_sample(circuit, fast).p_value, opt.p_threshold,
                                 where + " circuit vs fast");
        }
    }
    gate.seconds = timer.seconds();
    return gate;
}

inline OracleReport oracle_check(const OracleCheckOptions &opt = {}) {
    OracleReport report;
    for (auto &g : check_lemma1_and_round_trip(opt)) {
        report.gates.push_back(std::move(g));
    }
    report.gates.push_back(check_sign_rule(opt));
    report.gates.push_back(check_eigenvalue_table(opt));
    report.gates.push_back(check_bell_distribution(opt));
    report.gates.push_back(check_syndrome_law(opt));
    return report;
}

inline void print_report(std::ostream &out, const OracleReport &report) {
    for (const auto &g : report.gates) {
        out << (g.passed ? "PASS " : "FAIL ") << g.name << " checks=" << g.checks;
        if (std::isnan(g.min_p_value)) {
            out << " max_error=" << g.max_error;
        } else {
            out << " min_p=" << g.min_p_value;
        }
        out << " time=" << g.seconds << "s";
        if (!g.detail.empty()) {
            out << " (" << g.detail << ")";
        }
        out << "\n";
    }
    out << (report.passed() ? "all gates passed" : "some gates failed") << "\n";
}

}  // namespace bsqn::harness
