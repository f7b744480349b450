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
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bsqn/bitvec.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/rng.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn {

/// Fills `out` with independent fair bits.
template <typename URBG>
void randomize(BitVec &out, URBG &rng) {
    uint64_t *w = out.words();
    for (size_t k = 0; k < out.num_words(); k++) {
        w[k] = random_word(rng);
    }
    if (out.size() & 63) {
        w[out.num_words() - 1] &= (uint64_t{1} << (out.size() & 63)) - 1;
    }
}

struct Depolarizing {
    double fidelity;
};
struct DephasingIID {
    double mu;
};
struct Bimodal {
    double fidelity;
    BitVec b_star;
};
struct Explicit {
    RealVector a;
    std::vector<double> cdf;
};

/// Mixed state diagonal in the graph-state basis: rho = sum_b a_b |Phi_b><Phi_b|.
///
/// Depolarizing, DephasingIID, and Bimodal are described by formulas and never
/// hold 2^n numbers, so they work for any n. Explicit carries the vector a.
class DiagonalState {
   public:
    using Model = std::variant<Depolarizing, DephasingIID, Bimodal, Explicit>;

    size_t n() const {
        return n_;
    }
    const Model &model() const {
        return *model_;
    }

    std::string model_name() const {
        switch (model_->index()) {
            case 0:
                return "depolarizing";
            case 1:
                return "dephasing_iid";
            case 2:
                return "bimodal";
            default:
                return "explicit";
        }
    }

    /// a_0.
    double fidelity() const {
        return probability(BitVec(n_));
    }

    /// a_b, evaluated from the model formula.
    double probability(const BitVec &b) const {
        check_length(b);
        return std::visit(
            [&](const auto &m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Depolarizing>) {
                    if (b.none()) {
                        return m.fidelity;
                    }
                    return (1 - m.fidelity) / (std::exp2(static_cast<double>(n_)) - 1);
                } else if constexpr (std::is_same_v<T, DephasingIID>) {
                    double h = static_cast<double>(b.popcount());
                    return std::pow(m.mu, h) * std::pow(1 - m.mu, static_cast<double>(n_) - h);
                } else if constexpr (std::is_same_v<T, Bimodal>) {
                    if (b.none()) {
                        return m.fidelity;
                    }
                    return b == m.b_star ? 1 - m.fidelity : 0.0;
                } else {
                    return m.a[b.to_uint64()];
                }
            },
            *model_);
    }

    /// w_i = Tr(rho P_i) = sum_b (-1)^{popcount(i AND b)} a_b.
    double expectation(const BitVec &i) const {
        check_length(i);
        return std::visit(
            [&](const auto &m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Depolarizing>) {
                    if (i.none()) {
                        return 1.0;
                    }
                    return m.fidelity - (1 - m.fidelity) / (std::exp2(static_cast<double>(n_)) - 1);
                } else if constexpr (std::is_same_v<T, DephasingIID>) {
                    return std::pow(1 - 2 * m.mu, static_cast<double>(i.popcount()));
                } else if constexpr (std::is_same_v<T, Bimodal>) {
                    return m.fidelity + (1 - m.fidelity) * (dot(i, m.b_star) ? -1.0 : 1.0);
                } else {
                    uint64_t idx = i.to_uint64();
                    double total = 0;
                    for (uint64_t b = 0; b < m.a.size(); b++) {
                        total += (std::popcount(b & idx) & 1) ? -m.a[b] : m.a[b];
                    }
                    return total;
                }
            },
            *model_);
    }

    /// Explicit vector a of length 2^n.
    RealVector exact_a() const {
        if (n_ > kMaxExplicitOrder) {
            throw std::invalid_argument("exact_a limited to n <= " + std::to_string(kMaxExplicitOrder));
        }
        if (const auto *e = std::get_if<Explicit>(model_.get())) {
            return e->a;
        }
        RealVector a(size_t{1} << n_);
        BitVec b(n_);
        for (uint64_t k = 0; k < a.size(); k++) {
            b.words()[0] = k;
            a[k] = probability(b);
        }
        return a;
    }

    /// Draws an error string b with probability a_b into `out` (size n).
    template <typename URBG>
    void sample_into(BitVec &out, URBG &rng) const {
        out.clear();
        std::visit(
            [&](const auto &m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Depolarizing>) {
                    if (uniform01(rng) < m.fidelity) {
                        return;
                    }
                    // Uniform over the 2^n - 1 nonzero strings.
                    do {
                        randomize(out, rng);
                    } while (out.none());
                } else if constexpr (std::is_same_v<T, DephasingIID>) {
                    sample_iid(out, m.mu, rng);
                } else if constexpr (std::is_same_v<T, Bimodal>) {
                    if (uniform01(rng) >= m.fidelity) {
                        out = m.b_star;
                    }
                } else {
                    double u = uniform01(rng) * m.cdf.back();
                    auto it = std::upper_bound(m.cdf.begin(), m.cdf.end(), u);
                    uint64_t k = std::min<uint64_t>(it - m.cdf.begin(), m.cdf.size() - 1);
                    out.words()[0] = k;
                }
            },
            *model_);
    }

    template <typename URBG>
    BitVec sample(URBG &rng) const {
        BitVec out(n_);
        sample_into(out, rng);
        return out;
    }

    static DiagonalState depolarizing(size_t n, double fidelity) {
        check_order(n);
        check_unit("F", fidelity);
        return DiagonalState(n, Depolarizing{fidelity});
    }

    static DiagonalState dephasing_iid(size_t n, double mu) {
        check_order(n);
        check_unit("mu", mu);
        return DiagonalState(n, DephasingIID{mu});
    }

    /// Dephasing strength giving fidelity (1 - mu)^n = F.
    static DiagonalState dephasing_with_fidelity(size_t n, double fidelity) {
        check_order(n);
        check_unit("F", fidelity);
        return dephasing_iid(n, 1 - std::pow(fidelity, 1.0 / static_cast<double>(n)));
    }

    static DiagonalState bimodal(size_t n, double fidelity, BitVec b_star) {
        check_order(n);
        check_unit("F", fidelity);
        if (b_star.size() != n) {
            throw std::invalid_argument("bimodal b_star length " + std::to_string(b_star.size()) + " != n " +
                                        std::to_string(n));
        }
        if (b_star.none()) {
            throw std::invalid_argument("bimodal b_star must be nonzero");
        }
        return DiagonalState(n, Bimodal{fidelity, std::move(b_star)});
    }

    static DiagonalState explicit_state(RealVector a) {
        size_t n = log2_length(a.size());
        if (n == 0) {
            throw std::invalid_argument("explicit state needs n >= 1 (length >= 2)");
        }
        if (n > kMaxExplicitOrder) {
            throw std::invalid_argument("explicit state limited to n <= " + std::to_string(kMaxExplicitOrder));
        }
        double total = 0;
        std::vector<double> cdf(a.size());
        for (size_t k = 0; k < a.size(); k++) {
            if (!(a[k] >= 0)) {
                throw std::invalid_argument("explicit a has a negative entry at index " + std::to_string(k));
            }
            total += a[k];
            cdf[k] = total;
        }
        if (std::abs(total - 1) > 1e-9) {
            throw std::invalid_argument("explicit a sums to " + std::to_string(total) + ", expected 1");
        }
        return DiagonalState(n, Explicit{std::move(a), std::move(cdf)});
    }

   private:
    DiagonalState(size_t n, Model model) : n_(n), model_(std::make_shared<const Model>(std::move(model))) {
    }

    static void check_order(size_t n) {
        if (n == 0) {
            throw std::invalid_argument("state needs n >= 1");
        }
    }
    static void check_unit(const char *name, double value) {
        if (!(value >= 0 && value <= 1)) {
            throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) + " outside [0, 1]");
        }
    }
    void check_length(const BitVec &b) const {
        if (b.size() != n_) {
            throw std::invalid_argument("index length " + std::to_string(b.size()) + " != n " + std::to_string(n_));
        }
    }

    template <typename URBG>
    static void sample_iid(BitVec &out, double mu, URBG &rng) {
        const size_t n = out.size();
        if (mu <= 0) {
            return;
        }
        if (mu >= 1) {
            out = BitVec::ones(n);
            return;
        }
        if (mu < 0.25) {
            // Jump between set bits with geometric gaps.
            std::geometric_distribution<size_t> gap(mu);
            size_t pos = gap(rng);
            while (pos < n) {
                out.set(pos, true);
                pos += 1 + gap(rng);
            }
            return;
        }
        std::bernoulli_distribution bit(mu);
        for (size_t k = 0; k < n; k++) {
            if (bit(rng)) {
                out.set(k, true);
            }
        }
    }

    size_t n_ = 0;
    std::shared_ptr<const Model> model_;
};

/// Pauli channel N(rho) = sum_P lambda_P P rho P.
struct PauliChannel {
    std::vector<std::pair<PauliString, double>> terms;

    void validate() const {
        double total = 0;
        for (const auto &[p, rate] : terms) {
            if (!(rate >= 0)) {
                throw std::invalid_argument("Pauli rate for " + p.str() + " is negative");
            }
            total += rate;
        }
        if (std::abs(total - 1) > 1e-9) {
            throw std::invalid_argument("Pauli rates sum to " + std::to_string(total) + ", expected 1");
        }
    }
};

/// Graph-diagonal form of N(Phi_G): a_b is the total rate of the coset
/// (U_b S_G)^+. Each term's coset is read off directly as z XOR A x.
inline DiagonalState channel_to_diagonal(const Graph &g, const PauliChannel &channel) {
    channel.validate();
    if (g.n() > kMaxExplicitOrder) {
        throw std::invalid_argument("channel_to_diagonal limited to n <= " + std::to_string(kMaxExplicitOrder));
    }
    RealVector a(size_t{1} << g.n(), 0.0);
    for (const auto &[p, rate] : channel.terms) {
        if (p.n() != g.n()) {
            throw std::invalid_argument("Pauli " + p.str() + " does not match graph order");
        }
        a[coset_label(g, p).to_uint64()] += rate;
    }
    return DiagonalState::explicit_state(std::move(a));
}

}  // namespace bsqn
