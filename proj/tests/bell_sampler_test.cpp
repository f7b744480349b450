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

#include "bsqn/bell_sampler.hpp"

#include <chrono>
#include <sstream>

#include "bsqn/stats.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace bsqn;
using namespace bsqn::testing;

namespace {

std::vector<DiagonalState> gate_models(size_t n) {
    BitVec b_star = BitVec::ones(n);
    return {
        DiagonalState::depolarizing(n, 0.7),
        DiagonalState::dephasing_iid(n, 0.15),
        DiagonalState::bimodal(n, 0.6, b_star),
    };
}

SyndromeHistogram histogram_from_counts(size_t n, const std::vector<uint64_t> &counts) {
    SyndromeHistogram h(n);
    for (uint64_t s = 0; s < counts.size(); s++) {
        if (counts[s]) {
            h.add(BitVec::from_uint64(n, s), counts[s]);
        }
    }
    return h;
}

}  // namespace

TEST(syndrome_from_outcome, examples) {
    Graph g = complete_graph(3);
    ASSERT_TRUE(syndrome_from_outcome(g, BellOutcome{BitVec(6)}).none());

    Graph edgeless = graph_from_edges(3, {});
    Rng rng = test_rng(60);
    for (int k = 0; k < 20; k++) {
        BellOutcome out{BitVec(6)};
        randomize(out.beta, rng);
        ASSERT_EQ(syndrome_from_outcome(edgeless, out), out.z_part());
    }
    ASSERT_THROW(syndrome_from_outcome(g, BellOutcome{BitVec(4)}), std::invalid_argument);
}

TEST(syndrome_from_outcome, eigenvalue_table_matches_dense_oracle) {
    Rng rng = test_rng(61);
    for (size_t n = 1; n <= 4; n++) {
        for (const Graph &g : {complete_graph(n), random_graph(n, rng), path_graph(n)}) {
            for (uint64_t beta = 0; beta < (uint64_t{1} << (2 * n)); beta++) {
                BitVec s = syndrome_from_outcome(g, BellOutcome{BitVec::from_uint64(2 * n, beta)});
                for (uint64_t b = 0; b < (uint64_t{1} << n); b++) {
                    BitVec bv = BitVec::from_uint64(n, b);
                    double dense = oracle::dense_pair_eigenvalue(n, beta, stabilizer_element(g, bv));
                    ASSERT_NEAR(dense, dot(bv, s) ? -1.0 : 1.0, 1e-12) << "n=" << n << " beta=" << beta;
                }
            }
        }
    }
}

TEST(sample_syndromes, pure_state_concentrates_at_zero) {
    Rng rng = test_rng(62);
    Graph g = complete_graph(4);
    DiagonalState pure = DiagonalState::depolarizing(4, 1.0);
    for (const auto &h : {sample_syndromes_circuit(g, pure, 500, rng), sample_syndromes_fast(g, pure, 500, rng)}) {
        ASSERT_EQ(h.total_shots(), 500);
        ASSERT_EQ(h.count(BitVec(4)), 500);
        ASSERT_EQ(h.support_size(), 1);
    }
}

TEST(sample_syndromes, bimodal_half_split) {
    Rng rng = test_rng(63);
    Graph g = complete_graph(3);
    BitVec b_star = BitVec::from_string("101");
    DiagonalState s = DiagonalState::bimodal(3, 0.5, b_star);
    const uint64_t shots = 20000;
    for (const auto &h : {sample_syndromes_circuit(g, s, shots, rng), sample_syndromes_fast(g, s, shots, rng)}) {
        ASSERT_EQ(h.count(BitVec(3)) + h.count(b_star), shots);
        ASSERT_NEAR(h.count(b_star) / double(shots), 0.5, 4 * std::sqrt(0.25 / shots));
    }
}

TEST(sample_syndromes, depolarizing_self_convolution_example) {
    RealVector a = DiagonalState::depolarizing(2, 0.7).exact_a();
    RealVector conv = self_convolution(a);
    RealVector want = {0.52, 0.16, 0.16, 0.16};
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(conv[k], want[k], 1e-15);
    }
    Rng rng = test_rng(64);
    Graph g = complete_graph(2);
    DiagonalState s = DiagonalState::depolarizing(2, 0.7);
    for (const auto &h :
         {sample_syndromes_circuit(g, s, 100000, rng), sample_syndromes_fast(g, s, 100000, rng)}) {
        auto chi = stats::chi_square_gof(h.counts_vector(), want);
        ASSERT_GT(chi.p_value, 0.001);
    }
}

TEST(sample_syndromes, equivalence_gate_circuit_fast_and_dense) {
    const uint64_t shots = 100000;
    for (size_t n = 1; n <= 4; n++) {
        Rng graph_rng = test_rng(65 + n);
        Graph g = random_graph(n, graph_rng);
        int model_index = 0;
        for (const auto &state : gate_models(n)) {
            Rng rng = test_rng(1000 * n + model_index++);
            RealVector law = oracle::dense_syndrome_distribution(g, state.exact_a());
            SyndromeHistogram circuit = sample_syndromes_circuit(g, state, shots, rng);
            SyndromeHistogram fast = sample_syndromes_fast(g, state, shots, rng);
            auto c1 = stats::chi_square_gof(circuit.counts_vector(), law);
            auto c2 = stats::chi_square_gof(fast.counts_vector(), law);
            auto c3 = stats::chi_square_two_sample(circuit.counts_vector(), fast.counts_vector());
            ASSERT_GT(c1.p_value, 0.001) << state.model_name() << " n=" << n;
            ASSERT_GT(c2.p_value, 0.001) << state.model_name() << " n=" << n;
            ASSERT_GT(c3.p_value, 0.001) << state.model_name() << " n=" << n;
        }
    }
}

TEST(sample_syndromes, raw_outcomes_logged_on_request) {
    Rng rng = test_rng(66);
    Graph g = complete_graph(3);
    std::vector<BellOutcome> raw;
    SyndromeHistogram h = sample_syndromes_circuit(g, DiagonalState::depolarizing(3, 0.8), 100, rng, &raw);
    ASSERT_EQ(raw.size(), 100);
    SyndromeHistogram rebuilt(3);
    for (const auto &out : raw) {
        rebuilt.add(syndrome_from_outcome(g, out));
    }
    ASSERT_EQ(rebuilt, h);
}

TEST(sample_syndromes, fast_path_is_cheap_at_large_n) {
    Rng rng = test_rng(67);
    Graph g = complete_graph(200);
    DiagonalState s = DiagonalState::dephasing_iid(200, 0.01);
    auto start = std::chrono::steady_clock::now();
    SyndromeBatch batch = sample_syndrome_batch(g, s, 10000, rng);
    SyndromeHistogram h = sample_syndromes_fast(g, s, 10000, rng);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ASSERT_EQ(batch.num_shots(), 10000);
    ASSERT_FALSE(h.is_dense());
    ASSERT_LT(seconds, 1.0);
}

TEST(sample_syndromes, rejects_order_mismatch) {
    Rng rng = test_rng(68);
    ASSERT_THROW(sample_syndromes_fast(complete_graph(3), DiagonalState::depolarizing(4, 0.9), 10, rng),
                 std::invalid_argument);
    ASSERT_THROW(sample_syndromes_circuit(complete_graph(3), DiagonalState::depolarizing(4, 0.9), 10, rng),
                 std::invalid_argument);
}

TEST(syndrome_histogram, dense_and_sparse_agree_and_merge) {
    Rng rng = test_rng(69);
    SyndromeHistogram dense(5), sparse(5, true), first(5), second(5);
    ASSERT_TRUE(dense.is_dense());
    ASSERT_FALSE(sparse.is_dense());
    for (int k = 0; k < 1000; k++) {
        BitVec s(5);
        randomize(s, rng);
        dense.add(s);
        sparse.add(s);
        (k % 3 ? first : second).add(s);
    }
    ASSERT_EQ(dense, sparse);
    ASSERT_EQ(dense.counts_vector(), sparse.counts_vector());
    SyndromeHistogram merged_ab = first, merged_ba = second;
    merged_ab.merge(second);
    merged_ba.merge(first);
    ASSERT_EQ(merged_ab, dense);
    ASSERT_EQ(merged_ba, dense);
    ASSERT_THROW(dense.merge(SyndromeHistogram(4)), std::invalid_argument);
    ASSERT_THROW(dense.add(BitVec(4)), std::invalid_argument);
}

TEST(c_hat_full, examples) {
    CHatVector all_zero = c_hat_full(histogram_from_counts(3, {10, 0, 0, 0, 0, 0, 0, 0}));
    for (double c : all_zero.values) {
        ASSERT_EQ(c, 1.0);
    }

    CHatVector depol = c_hat_full(histogram_from_counts(2, {52, 16, 16, 16}));
    RealVector want = {1, 0.36, 0.36, 0.36};
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(depol.values[k], want[k], 1e-15);
    }

    CHatVector bimodal = c_hat_full(histogram_from_counts(2, {50, 0, 0, 50}));
    RealVector want_b = {1, 0, 0, 1};
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(bimodal.values[k], want_b[k], 1e-15);
    }

    ASSERT_THROW(c_hat_full(SyndromeHistogram(2)), std::invalid_argument);
}

TEST(c_hat_full, exact_law_gives_squared_expectations) {
    Rng rng = test_rng(70);
    for (size_t n = 1; n <= 6; n++) {
        RealVector a = random_probability_vector(n, rng);
        RealVector law = self_convolution(a);
        RealVector w = naive_wht(a);
        RealVector c = naive_wht(law);
        for (size_t i = 0; i < a.size(); i++) {
            ASSERT_NEAR(c[i], w[i] * w[i], 1e-12);
        }
    }
}

TEST(c_hat_full, identity_entry_exact_and_clipped_range) {
    Rng rng = test_rng(71);
    for (size_t n = 1; n <= 8; n++) {
        Graph g = complete_graph(n);
        SyndromeHistogram h = sample_syndromes_fast(g, DiagonalState::depolarizing(n, 0.55), 37, rng);
        CHatVector c = c_hat_full(h);
        ASSERT_EQ(c.values[0], 1.0);
        ASSERT_EQ(c.unclipped[0], 1.0);
        for (size_t i = 0; i < c.values.size(); i++) {
            ASSERT_GE(c.values[i], 0.0);
            ASSERT_LE(c.values[i], 1.0);
            ASSERT_EQ(c.values[i], std::max(0.0, c.unclipped[i]));
        }
    }
}

TEST(c_hat_selected, matches_full_vector) {
    Rng rng = test_rng(72);
    for (size_t n : {1, 3, 6, 10}) {
        Graph g = complete_graph(n);
        DiagonalState s = DiagonalState::dephasing_iid(n, 0.1);
        Rng r1(rng()), r2 = r1;
        SyndromeHistogram h = sample_syndromes_fast(g, s, 3000, r1);
        SyndromeBatch batch = sample_syndrome_batch(g, s, 3000, r2);
        ASSERT_EQ(batch.to_histogram(), h);
        CHatVector full = c_hat_full(h);
        std::vector<BitVec> indices;
        for (int k = 0; k < 40; k++) {
            BitVec b(n);
            randomize(b, rng);
            indices.push_back(b);
        }
        indices.push_back(BitVec(n));
        CHatVector from_h = c_hat_selected(h, indices);
        CHatVector from_batch = c_hat_selected(batch, indices);
        for (size_t k = 0; k < indices.size(); k++) {
            double want = full.unclipped[indices[k].to_uint64()];
            ASSERT_NEAR(from_h.unclipped[k], want, 1e-12);
            ASSERT_NEAR(from_batch.unclipped[k], want, 1e-12);
            ASSERT_EQ(from_batch.values[k], std::max(0.0, from_batch.unclipped[k]));
        }
        ASSERT_EQ(from_batch.values.back(), 1.0);
    }
}

TEST(c_hat_selected, bimodal_large_n_reference_value) {
    const size_t n = 40;
    // Odd weight, so that popcount(b_star AND b_star) is odd.
    BitVec b_star = BitVec::ones(n);
    b_star.set(0, false);
    DiagonalState s = DiagonalState::bimodal(n, 0.53, b_star);
    double w = s.expectation(b_star);
    ASSERT_NEAR(w * w, 0.0036, 1e-15);

    Rng rng = test_rng(73);
    const uint64_t shots = 200000;
    SyndromeBatch batch = sample_syndrome_batch(complete_graph(n), s, shots, rng);
    CHatVector c = c_hat_selected(batch, {b_star});
    // Per-shot eigenvalue has variance 1 - c^2.
    ASSERT_NEAR(c.unclipped[0], 0.0036, 4 * std::sqrt((1 - 0.0036 * 0.0036) / shots));
}

TEST(c_hat, unclipped_estimates_are_unbiased) {
    const int runs = 200;
    const uint64_t shots = 500;
    for (size_t n : {2, 4, 6}) {
        Graph g = complete_graph(n);
        int model_index = 0;
        for (const auto &state : gate_models(n)) {
            Rng rng = test_rng(7400 + 10 * n + model_index++);
            RealVector sum(size_t{1} << n, 0.0), sum_sq(size_t{1} << n, 0.0);
            for (int r = 0; r < runs; r++) {
                CHatVector c = c_hat_full(sample_syndromes_fast(g, state, shots, rng));
                for (size_t i = 0; i < sum.size(); i++) {
                    sum[i] += c.unclipped[i];
                    sum_sq[i] += c.unclipped[i] * c.unclipped[i];
                }
            }
            for (size_t i = 1; i < sum.size(); i++) {
                double w = state.expectation(BitVec::from_uint64(n, i));
                double mean = sum[i] / runs;
                double var = std::max(1e-12, (sum_sq[i] / runs - mean * mean) * runs / (runs - 1));
                double se = std::sqrt(var / runs);
                ASSERT_NEAR(mean, w * w, 4 * se + 1e-12) << state.model_name() << " n=" << n << " i=" << i;
            }
        }
    }
}

TEST(shot_log, round_trip_and_validation) {
    Rng rng = test_rng(75);
    for (size_t n : {1, 5, 64, 70}) {
        SyndromeBatch batch = sample_syndrome_batch(complete_graph(n), DiagonalState::depolarizing(n, 0.5), 130, rng);
        std::stringstream ss;
        write_shot_log(ss, batch, 1234);
        ShotLog log = read_shot_log(ss);
        ASSERT_EQ(log.seed, 1234);
        ASSERT_EQ(log.batch.num_shots(), 130);
        for (uint64_t t = 0; t < 130; t++) {
            ASSERT_EQ(log.batch.shot(t), batch.shot(t));
        }
    }
    std::istringstream header_only("n=3 shots=2 seed=1\n7\n");
    ASSERT_THROW(read_shot_log(header_only), std::invalid_argument);
    std::istringstream missing("n=3 shots=0\n");
    ASSERT_THROW(read_shot_log(missing), std::invalid_argument);
    std::istringstream bad_key("n=3 shots=0 seed=1 extra=2\n");
    ASSERT_THROW(read_shot_log(bad_key), std::invalid_argument);
    std::istringstream too_wide("n=3 shots=1 seed=1\nf\n");
    ASSERT_THROW(read_shot_log(too_wide), std::invalid_argument);
    std::istringstream empty("");
    ASSERT_THROW(read_shot_log(empty), std::invalid_argument);
}
