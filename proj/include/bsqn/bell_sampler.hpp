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
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsqn/bitvec.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/noise.hpp"
#include "bsqn/tableau.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn {

/// Joint outcome of the commuting observables S_j (x) S_j read off a Bell
/// outcome: s = z_beta XOR A x_beta. The eigenvalue of P_b (x) P_b on
/// |phi_beta> is then (-1)^{popcount(b AND s)}.
inline BitVec syndrome_from_outcome(const Graph &g, const BellOutcome &outcome) {
    if (outcome.n() != g.n()) {
        throw std::invalid_argument("Bell outcome length does not match graph order");
    }
    return outcome.z_part() ^ g.adjacency_times(outcome.x_part());
}

/// Largest n stored as a dense 2^n count vector; larger n use a hash map.
inline constexpr size_t kMaxDenseHistogramOrder = 20;

/// Counts of observed syndromes.
class SyndromeHistogram {
   public:
    SyndromeHistogram() = default;
    explicit SyndromeHistogram(size_t n, bool force_sparse = false) : n_(n) {
        if (!force_sparse && n <= kMaxDenseHistogramOrder) {
            dense_.assign(size_t{1} << n, 0);
        }
    }

    size_t n() const {
        return n_;
    }
    uint64_t total_shots() const {
        return total_;
    }
    bool is_dense() const {
        return !dense_.empty();
    }

    void add(const BitVec &s, uint64_t count = 1) {
        if (s.size() != n_) {
            throw std::invalid_argument("syndrome length does not match histogram");
        }
        if (is_dense()) {
            dense_[s.words()[0]] += count;
        } else {
            sparse_[s] += count;
        }
        total_ += count;
    }

    uint64_t count(const BitVec &s) const {
        if (is_dense()) {
            return dense_[s.to_uint64()];
        }
        auto it = sparse_.find(s);
        return it == sparse_.end() ? 0 : it->second;
    }

    void merge(const SyndromeHistogram &other) {
        if (other.n_ != n_) {
            throw std::invalid_argument("cannot merge histograms of different n");
        }
        other.for_each([&](const BitVec &s, uint64_t c) { add(s, c); });
    }

    /// Calls fn(syndrome, count) for each syndrome with nonzero count.
    template <typename Fn>
    void for_each(Fn &&fn) const {
        if (is_dense()) {
            BitVec s(n_);
            for (uint64_t k = 0; k < dense_.size(); k++) {
                if (dense_[k]) {
                    if (n_ > 0) {
                        s.words()[0] = k;
                    }
                    fn(static_cast<const BitVec &>(s), dense_[k]);
                }
            }
        } else {
            for (const auto &[s, c] : sparse_) {
                fn(s, c);
            }
        }
    }

    size_t support_size() const {
        size_t total = 0;
        for_each([&](const BitVec &, uint64_t) { total++; });
        return total;
    }

    /// Dense counts as doubles, length 2^n.
    RealVector counts_vector() const {
        if (n_ > kMaxExplicitOrder) {
            throw std::invalid_argument("dense histogram view limited to n <= " + std::to_string(kMaxExplicitOrder));
        }
        RealVector out(size_t{1} << n_, 0.0);
        for_each([&](const BitVec &s, uint64_t c) { out[s.to_uint64()] += static_cast<double>(c); });
        return out;
    }

    /// Empirical frequencies m_hat = counts / N.
    RealVector frequencies() const {
        RealVector out = counts_vector();
        for (auto &x : out) {
            x /= static_cast<double>(total_);
        }
        return out;
    }

    bool operator==(const SyndromeHistogram &other) const {
        if (n_ != other.n_ || total_ != other.total_) {
            return false;
        }
        bool same = true;
        for_each([&](const BitVec &s, uint64_t c) { same = same && other.count(s) == c; });
        return same;
    }

   private:
    size_t n_ = 0;
    uint64_t total_ = 0;
    std::vector<uint64_t> dense_;
    std::unordered_map<BitVec, uint64_t, BitVecHash> sparse_;
};

/// Ordered stream of syndromes stored bit-sliced: plane j holds bit j of every
/// shot, 64 shots per word. Parities (-1)^{b.s} for all shots then cost
/// popcount(b) word-XORs per 64 shots.
class SyndromeBatch {
   public:
    SyndromeBatch() = default;
    explicit SyndromeBatch(size_t n) : n_(n), planes_(n) {
    }

    size_t n() const {
        return n_;
    }
    uint64_t num_shots() const {
        return shots_;
    }

    void reserve(uint64_t shots) {
        for (auto &p : planes_) {
            p.reserve((shots + 63) / 64);
        }
    }

    void add(const BitVec &s) {
        if (s.size() != n_) {
            throw std::invalid_argument("syndrome length does not match batch");
        }
        const size_t bit = shots_ & 63;
        if (bit == 0) {
            for (auto &p : planes_) {
                p.push_back(0);
            }
        }
        const uint64_t *w = s.words();
        for (size_t k = 0; k < s.num_words(); k++) {
            uint64_t word = w[k];
            while (word) {
                size_t j = 64 * k + std::countr_zero(word);
                planes_[j].back() |= uint64_t{1} << bit;
                word &= word - 1;
            }
        }
        shots_++;
    }

    BitVec shot(uint64_t t) const {
        BitVec s(n_);
        for (size_t j = 0; j < n_; j++) {
            if ((planes_[j][t >> 6] >> (t & 63)) & 1) {
                s.set(j, true);
            }
        }
        return s;
    }

    /// Number of shots with popcount(b AND s) odd.
    uint64_t odd_parity_count(const BitVec &b) const {
        if (b.size() != n_) {
            throw std::invalid_argument("index length does not match batch");
        }
        const size_t num_words = planes_.empty() ? 0 : planes_[0].size();
        if (num_words == 0) {
            return 0;
        }
        std::vector<size_t> support;
        for (size_t j = 0; j < n_; j++) {
            if (b.get(j)) {
                support.push_back(j);
            }
        }
        uint64_t odd = 0;
        for (size_t w = 0; w < num_words; w++) {
            uint64_t acc = 0;
            for (size_t j : support) {
                acc ^= planes_[j][w];
            }
            odd += std::popcount(acc);
        }
        return odd;
    }

    SyndromeHistogram to_histogram() const {
        SyndromeHistogram h(n_);
        for (uint64_t t = 0; t < shots_; t++) {
            h.add(shot(t));
        }
        return h;
    }

   private:
    size_t n_ = 0;
    uint64_t shots_ = 0;
    std::vector<std::vector<uint64_t>> planes_;
};

/// Circuit-backed sampling: per shot draw b, b' from the state, run the Bell
/// circuit on |Phi_b> (x) |Phi_b'>, and reduce the outcome to a syndrome.
/// When `raw_outcomes` is non-null every Bell outcome is also appended to it.
template <typename URBG>
SyndromeHistogram sample_syndromes_circuit(const Graph &g, const DiagonalState &state, uint64_t shots, URBG &rng,
                                           std::vector<BellOutcome> *raw_outcomes = nullptr) {
    if (state.n() != g.n()) {
        throw std::invalid_argument("state order does not match graph");
    }
    SyndromeHistogram h(g.n());
    BitVec b(g.n()), b_prime(g.n());
    for (uint64_t t = 0; t < shots; t++) {
        state.sample_into(b, rng);
        state.sample_into(b_prime, rng);
        BellOutcome outcome = run_bell_circuit(g, b, b_prime, rng);
        h.add(syndrome_from_outcome(g, outcome));
        if (raw_outcomes) {
            raw_outcomes->push_back(std::move(outcome));
        }
    }
    return h;
}

/// Fast path: the syndrome of |Phi_b> (x) |Phi_b'> is b XOR b'.
template <typename URBG>
SyndromeHistogram sample_syndromes_fast(const Graph &g, const DiagonalState &state, uint64_t shots, URBG &rng) {
    if (state.n() != g.n()) {
        throw std::invalid_argument("state order does not match graph");
    }
    SyndromeHistogram h(g.n());
    BitVec b(g.n()), b_prime(g.n());
    for (uint64_t t = 0; t < shots; t++) {
        state.sample_into(b, rng);
        state.sample_into(b_prime, rng);
        b ^= b_prime;
        h.add(b);
    }
    return h;
}

/// Fast path keeping the ordered shot stream (no 2^n storage).
template <typename URBG>
SyndromeBatch sample_syndrome_batch(const Graph &g, const DiagonalState &state, uint64_t shots, URBG &rng) {
    if (state.n() != g.n()) {
        throw std::invalid_argument("state order does not match graph");
    }
    SyndromeBatch batch(g.n());
    batch.reserve(shots);
    BitVec b(g.n()), b_prime(g.n());
    for (uint64_t t = 0; t < shots; t++) {
        state.sample_into(b, rng);
        state.sample_into(b_prime, rng);
        b ^= b_prime;
        batch.add(b);
    }
    return batch;
}

/// Estimates of c_i = |Tr(rho P_i)|^2.
///
/// `values` are clipped at zero; `unclipped` keeps the raw empirical means,
/// which are the unbiased ones. For a full vector `indices` is empty and
/// position i is stabilizer index i.
struct CHatVector {
    RealVector values;
    RealVector unclipped;
    std::vector<BitVec> indices;
};

/// c_hat = max(0, WHT(m_hat)).
inline CHatVector c_hat_full(const SyndromeHistogram &h) {
    if (h.n() > kMaxExplicitOrder) {
        throw std::invalid_argument("c_hat_full limited to n <= " + std::to_string(kMaxExplicitOrder));
    }
    if (h.total_shots() == 0) {
        throw std::invalid_argument("c_hat_full needs at least one shot");
    }
    CHatVector out;
    // Transforming integer counts keeps the identity entry exactly N / N = 1.
    out.unclipped = wht(h.counts_vector());
    const double inv = 1.0 / static_cast<double>(h.total_shots());
    out.values.resize(out.unclipped.size());
    for (size_t i = 0; i < out.unclipped.size(); i++) {
        out.unclipped[i] *= inv;
        out.values[i] = std::max(0.0, out.unclipped[i]);
    }
    return out;
}

inline CHatVector c_hat_selected(const SyndromeHistogram &h, const std::vector<BitVec> &indices) {
    if (h.total_shots() == 0) {
        throw std::invalid_argument("c_hat_selected needs at least one shot");
    }
    CHatVector out;
    out.indices = indices;
    const double inv = 1.0 / static_cast<double>(h.total_shots());
    for (const auto &b : indices) {
        int64_t signed_sum = 0;
        h.for_each([&](const BitVec &s, uint64_t c) {
            signed_sum += dot(b, s) ? -static_cast<int64_t>(c) : static_cast<int64_t>(c);
        });
        double raw = static_cast<double>(signed_sum) * inv;
        out.unclipped.push_back(raw);
        out.values.push_back(std::max(0.0, raw));
    }
    return out;
}

inline CHatVector c_hat_selected(const SyndromeBatch &batch, const std::vector<BitVec> &indices) {
    if (batch.num_shots() == 0) {
        throw std::invalid_argument("c_hat_selected needs at least one shot");
    }
    CHatVector out;
    out.indices = indices;
    const double total = static_cast<double>(batch.num_shots());
    for (const auto &b : indices) {
        double odd = static_cast<double>(batch.odd_parity_count(b));
        double raw = (total - 2 * odd) / total;
        out.unclipped.push_back(raw);
        out.values.push_back(std::max(0.0, raw));
    }
    return out;
}

// Shot log: header "n=<n> shots=<N> seed=<seed>", then one lowercase hex
// syndrome per line (see BitVec::hex for the digit order).

inline void write_shot_log(std::ostream &out, const SyndromeBatch &batch, uint64_t seed) {
    out << "n=" << batch.n() << " shots=" << batch.num_shots() << " seed=" << seed << "\n";
    for (uint64_t t = 0; t < batch.num_shots(); t++) {
        out << batch.shot(t).hex() << "\n";
    }
}

struct ShotLog {
    uint64_t seed = 0;
    SyndromeBatch batch;
};

inline ShotLog read_shot_log(std::istream &in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::invalid_argument("shot log is empty");
    }
    size_t n = 0;
    uint64_t shots = 0, seed = 0;
    bool have_n = false, have_shots = false, have_seed = false;
    std::istringstream hs(header);
    std::string field;
    while (hs >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("malformed shot log header field '" + field + "'");
        }
        std::string key = field.substr(0, eq);
        uint64_t value = std::stoull(field.substr(eq + 1));
        if (key == "n") {
            n = value;
            have_n = true;
        } else if (key == "shots") {
            shots = value;
            have_shots = true;
        } else if (key == "seed") {
            seed = value;
            have_seed = true;
        } else {
            throw std::invalid_argument("unknown shot log header key '" + key + "'");
        }
    }
    if (!have_n || !have_shots || !have_seed) {
        throw std::invalid_argument("shot log header must carry n, shots and seed");
    }
    ShotLog log{seed, SyndromeBatch(n)};
    log.batch.reserve(shots);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        log.batch.add(BitVec::from_hex(n, line));
    }
    if (log.batch.num_shots() != shots) {
        throw std::invalid_argument("shot log declares " + std::to_string(shots) + " shots but holds " +
                                    std::to_string(log.batch.num_shots()));
    }
    return log;
}

}  // namespace bsqn
