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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsqn/bell_sampler.hpp"
#include "bsqn/bitvec.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/noise.hpp"
#include "bsqn/rng.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn {

/// Sign convention for Tr(rho P_i): if a_ref > 1/2 then
/// sgn Tr(rho P_i) = (-1)^{popcount(ref AND i)}.
///
/// `asserted` records that the caller vouches for a_ref > 1/2. Estimators
/// refuse to run without that assertion.
struct SignRule {
    BitVec reference;
    bool asserted = false;

    /// Reference 0^n with the fidelity > 1/2 assumption.
    static SignRule fidelity_above_half(size_t n) {
        return SignRule{BitVec(n), true};
    }
    static SignRule with_reference(BitVec ref) {
        return SignRule{std::move(ref), true};
    }

    bool sign_flipped(const BitVec &i) const {
        return dot(reference, i);
    }
    bool sign_flipped(uint64_t i) const {
        return std::popcount(reference.to_uint64() & i) & 1;
    }

    void require(size_t n) const {
        if (!asserted) {
            throw std::invalid_argument(
                "no sign reference asserted: supply a reference index whose diagonal element exceeds 1/2");
        }
        if (reference.size() != n) {
            throw std::invalid_argument("sign reference length " + std::to_string(reference.size()) + " != n " +
                                        std::to_string(n));
        }
    }
};

struct BsqnFullEstimate {
    RealVector w_hat;
    RealVector a_hat;
};

/// w_hat_i = sign_i sqrt(c_hat_i), a_hat = WHT(w_hat) / 2^n.
inline BsqnFullEstimate bsqn_full(const CHatVector &c_hat, const SignRule &sign_rule) {
    if (!c_hat.indices.empty()) {
        throw std::invalid_argument("bsqn_full needs a full-length c_hat vector");
    }
    size_t n = log2_length(c_hat.values.size());
    sign_rule.require(n);
    BsqnFullEstimate out;
    out.w_hat.resize(c_hat.values.size());
    for (uint64_t i = 0; i < c_hat.values.size(); i++) {
        double magnitude = std::sqrt(std::max(0.0, c_hat.values[i]));
        out.w_hat[i] = sign_rule.sign_flipped(i) ? -magnitude : magnitude;
    }
    out.a_hat = a_from_w(out.w_hat);
    return out;
}

struct RandomElementEstimate {
    BitVec target;
    size_t M = 0;
    std::vector<BitVec> indices;
    RealVector c_hat;
    double estimate = 0;
};

/// Draws M stabilizer indices uniformly with replacement (n fair bits each).
template <typename URBG>
std::vector<BitVec> sample_stabilizer_indices(size_t n, size_t M, URBG &rng) {
    std::vector<BitVec> indices(M, BitVec(n));
    for (auto &b : indices) {
        randomize(b, rng);
    }
    return indices;
}

/// Y_hat = (1/M) sum_s (-1)^{f_{target XOR ref}(P_s)} sqrt(c_hat_s).
inline double signed_sqrt_mean(const std::vector<BitVec> &indices, const RealVector &c_values, const BitVec &target,
                               const SignRule &sign_rule) {
    BitVec flip = target ^ sign_rule.reference;
    double total = 0;
    for (size_t k = 0; k < indices.size(); k++) {
        double magnitude = std::sqrt(std::clamp(c_values[k], 0.0, 1.0));
        total += dot(flip, indices[k]) ? -magnitude : magnitude;
    }
    return total / static_cast<double>(indices.size());
}

/// Estimates a_target from M randomly chosen stabilizer elements, all served
/// by one shared stream of Bell-sampling syndromes.
template <typename URBG>
RandomElementEstimate bsqn_random_element(const SyndromeBatch &shots, const Graph &g, const BitVec &target, size_t M,
                                          URBG &rng, const SignRule &sign_rule) {
    const size_t n = g.n();
    if (M == 0) {
        throw std::invalid_argument("bsqn_random_element needs M >= 1");
    }
    if (shots.n() != n || target.size() != n) {
        throw std::invalid_argument("bsqn_random_element: shot stream and target must match graph order");
    }
    sign_rule.require(n);
    RandomElementEstimate out;
    out.target = target;
    out.M = M;
    out.indices = sample_stabilizer_indices(n, M, rng);
    out.c_hat = c_hat_selected(shots, out.indices).values;
    out.estimate = signed_sqrt_mean(out.indices, out.c_hat, target, sign_rule);
    return out;
}

/// Same estimator fed with exact c_i = w_i^2 (infinite shots): isolates the
/// index-sampling randomness.
template <typename URBG>
RandomElementEstimate random_element_exact(const DiagonalState &state, const BitVec &target, size_t M, URBG &rng,
                                           const SignRule &sign_rule) {
    const size_t n = state.n();
    if (M == 0) {
        throw std::invalid_argument("random_element_exact needs M >= 1");
    }
    sign_rule.require(n);
    RandomElementEstimate out;
    out.target = target;
    out.M = M;
    out.indices = sample_stabilizer_indices(n, M, rng);
    for (const auto &b : out.indices) {
        double w = state.expectation(b);
        out.c_hat.push_back(w * w);
    }
    out.estimate = signed_sqrt_mean(out.indices, out.c_hat, target, sign_rule);
    return out;
}

// ---------------------------------------------------------------------------
// Direct graph-diagonal estimation (single-copy, node-local measurements).

enum class DgeStrategy { Naive, CompleteOverlapY, CompleteDisjointY };

inline std::string to_string(DgeStrategy s) {
    switch (s) {
        case DgeStrategy::Naive:
            return "Naive";
        case DgeStrategy::CompleteOverlapY:
            return "CompleteOverlapY";
        default:
            return "CompleteDisjointY";
    }
}

inline DgeStrategy parse_dge_strategy(const std::string &name) {
    if (name == "Naive" || name == "naive") {
        return DgeStrategy::Naive;
    }
    if (name == "CompleteOverlapY" || name == "overlap") {
        return DgeStrategy::CompleteOverlapY;
    }
    if (name == "CompleteDisjointY" || name == "disjoint") {
        return DgeStrategy::CompleteDisjointY;
    }
    throw std::invalid_argument("unknown DGE strategy '" + name + "'");
}

/// Largest graph order for which DGE plans are built (they hold 2^n entries).
inline constexpr size_t kMaxDgeOrder = 20;

struct ExtractedStabilizer {
    uint64_t index;
    uint64_t support;
};

/// One product-basis measurement setting and the stabilizers it reveals.
struct MeasurementSetting {
    std::string bases;  // one of X/Y/Z per qubit
    std::vector<ExtractedStabilizer> stabilizers;
};

struct MeasurementPlan {
    size_t n = 0;
    DgeStrategy strategy = DgeStrategy::Naive;
    std::vector<MeasurementSetting> settings;
};

namespace detail {

inline bool is_complete(const Graph &g) {
    return g.num_edges() == g.n() * (g.n() - 1) / 2;
}

inline MeasurementSetting single_stabilizer_setting(const Graph &g, uint64_t b) {
    PauliString p = stabilizer_element(g, BitVec::from_uint64(g.n(), b));
    MeasurementSetting setting;
    setting.bases.assign(g.n(), 'Z');
    for (size_t k = 0; k < g.n(); k++) {
        if (p.letter(k) != 'I') {
            setting.bases[k] = p.letter(k);
        }
    }
    uint64_t support = p.x.to_uint64() | p.z.to_uint64();
    setting.stabilizers.push_back({b, support});
    return setting;
}

}  // namespace detail

/// Groups the 2^n - 1 nontrivial stabilizers into measurement settings.
///
/// On a complete graph, even-weight P_b is Y on the support of b and odd-weight
/// P_b has full X/Z support. CompleteOverlapY reads every even-weight element
/// from one all-Y setting (2^{n-1} + 1 settings in total); CompleteDisjointY
/// shares an all-Y setting only between b and its complement (needs even n).
inline MeasurementPlan dge_plan(const Graph &g, DgeStrategy strategy) {
    const size_t n = g.n();
    if (n > kMaxDgeOrder) {
        throw std::invalid_argument("DGE plans limited to n <= " + std::to_string(kMaxDgeOrder));
    }
    if (strategy != DgeStrategy::Naive && !detail::is_complete(g)) {
        throw std::invalid_argument(to_string(strategy) + " requires a complete graph");
    }
    if (strategy == DgeStrategy::CompleteDisjointY && n % 2 != 0) {
        throw std::invalid_argument("CompleteDisjointY requires an even number of qubits");
    }
    MeasurementPlan plan;
    plan.n = n;
    plan.strategy = strategy;
    const uint64_t d = uint64_t{1} << n;
    const uint64_t all = d - 1;

    if (strategy == DgeStrategy::Naive) {
        for (uint64_t b = 1; b < d; b++) {
            plan.settings.push_back(detail::single_stabilizer_setting(g, b));
        }
        return plan;
    }

    if (strategy == DgeStrategy::CompleteOverlapY) {
        MeasurementSetting all_y{std::string(n, 'Y'), {}};
        for (uint64_t b = 1; b < d; b++) {
            if (std::popcount(b) % 2 == 0) {
                all_y.stabilizers.push_back({b, b});
            }
        }
        if (!all_y.stabilizers.empty()) {
            plan.settings.push_back(std::move(all_y));
        }
    } else {
        for (uint64_t b = 1; b < d; b++) {
            if (std::popcount(b) % 2 != 0) {
                continue;
            }
            uint64_t partner = all & ~b;
            if (partner == 0) {
                plan.settings.push_back({std::string(n, 'Y'), {{b, b}}});
            } else if (b < partner) {
                plan.settings.push_back({std::string(n, 'Y'), {{b, b}, {partner, partner}}});
            }
        }
    }
    for (uint64_t b = 1; b < d; b++) {
        if (std::popcount(b) % 2 == 1) {
            plan.settings.push_back(detail::single_stabilizer_setting(g, b));
        }
    }
    return plan;
}

/// Checks coverage of every nontrivial stabilizer and that each listed
/// stabilizer agrees with its setting's bases on its support.
inline void validate_plan(const MeasurementPlan &plan, const Graph &g) {
    const uint64_t d = uint64_t{1} << g.n();
    std::vector<bool> covered(d, false);
    for (const auto &setting : plan.settings) {
        if (setting.bases.size() != g.n()) {
            throw std::logic_error("setting basis string has wrong length");
        }
        for (const auto &st : setting.stabilizers) {
            PauliString p = stabilizer_element(g, BitVec::from_uint64(g.n(), st.index));
            for (size_t k = 0; k < g.n(); k++) {
                bool in_support = (st.support >> k) & 1;
                if (in_support != (p.letter(k) != 'I')) {
                    throw std::logic_error("support mask of stabilizer " + p.str() + " is wrong");
                }
                if (in_support && p.letter(k) != setting.bases[k]) {
                    throw std::logic_error("stabilizer " + p.str() + " disagrees with setting " + setting.bases);
                }
            }
            covered[st.index] = true;
        }
    }
    for (uint64_t b = 1; b < d; b++) {
        if (!covered[b]) {
            throw std::logic_error("stabilizer index " + std::to_string(b) + " is not covered by the plan");
        }
    }
}

/// Thrown when the shot budget cannot give every setting at least one shot.
class InsufficientBudget : public std::invalid_argument {
   public:
    InsufficientBudget(uint64_t budget, uint64_t required)
        : std::invalid_argument("DGE needs at least " + std::to_string(required) + " shots (one per setting), got " +
                                std::to_string(budget)),
          required_(required) {
    }
    uint64_t required() const {
        return required_;
    }

   private:
    uint64_t required_;
};

/// Splits `budget` shots evenly over `num_settings`; the remainder goes one
/// shot each to settings chosen uniformly without replacement.
template <typename URBG>
std::vector<uint64_t> allocate_shots(uint64_t budget, size_t num_settings, URBG &rng) {
    if (budget < num_settings) {
        throw InsufficientBudget(budget, num_settings);
    }
    std::vector<uint64_t> shots(num_settings, budget / num_settings);
    uint64_t remainder = budget % num_settings;
    std::vector<size_t> order(num_settings);
    std::iota(order.begin(), order.end(), size_t{0});
    for (uint64_t k = 0; k < remainder; k++) {
        size_t j = k + std::uniform_int_distribution<size_t>(0, num_settings - 1 - k)(rng);
        std::swap(order[k], order[j]);
        shots[order[k]]++;
    }
    return shots;
}

struct DgeEstimate {
    std::vector<uint64_t> shots_per_setting;
    RealVector w_hat;
    RealVector a_hat;
};

/// Simulates DGE on a graph-diagonal state by tracking the Z-frame error e of
/// each copy: every stabilizer P_b in the shot's setting reads
/// (-1)^{popcount(e AND b)}.
template <typename URBG>
DgeEstimate dge_simulate(const MeasurementPlan &plan, const Graph &g, const DiagonalState &state, uint64_t budget,
                         URBG &rng) {
    if (plan.n != g.n() || state.n() != g.n()) {
        throw std::invalid_argument("dge_simulate: plan, graph and state orders differ");
    }
    const uint64_t d = uint64_t{1} << g.n();
    DgeEstimate out;
    out.shots_per_setting = allocate_shots(budget, plan.settings.size(), rng);
    std::vector<int64_t> signed_sum(d, 0);
    std::vector<uint64_t> count(d, 0);
    BitVec e(g.n());
    for (size_t k = 0; k < plan.settings.size(); k++) {
        const auto &stabilizers = plan.settings[k].stabilizers;
        for (uint64_t shot = 0; shot < out.shots_per_setting[k]; shot++) {
            state.sample_into(e, rng);
            uint64_t frame = e.to_uint64();
            for (const auto &st : stabilizers) {
                signed_sum[st.index] += (std::popcount(frame & st.index) & 1) ? -1 : 1;
            }
        }
        for (const auto &st : stabilizers) {
            count[st.index] += out.shots_per_setting[k];
        }
    }
    out.w_hat.assign(d, 0.0);
    out.w_hat[0] = 1.0;
    for (uint64_t b = 1; b < d; b++) {
        if (count[b]) {
            out.w_hat[b] = static_cast<double>(signed_sum[b]) / static_cast<double>(count[b]);
        }
    }
    out.a_hat = a_from_w(out.w_hat);
    return out;
}

}  // namespace bsqn
