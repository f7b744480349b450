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

#include "bsqn/noise.hpp"

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace bsqn;
using namespace bsqn::testing;

namespace {

void expect_vector_near(const RealVector &got, const RealVector &want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (size_t k = 0; k < got.size(); k++) {
        ASSERT_NEAR(got[k], want[k], tol) << "index " << k;
    }
}

std::vector<DiagonalState> model_zoo(size_t n) {
    return {
        DiagonalState::depolarizing(n, 0.9),
        DiagonalState::dephasing_iid(n, 0.05),
        DiagonalState::bimodal(n, 0.8, BitVec::ones(n)),
    };
}

}  // namespace

TEST(depolarizing, examples) {
    expect_vector_near(DiagonalState::depolarizing(2, 0.7).exact_a(), {0.7, 0.1, 0.1, 0.1}, 1e-15);
    expect_vector_near(DiagonalState::depolarizing(3, 1.0).exact_a(), {1, 0, 0, 0, 0, 0, 0, 0}, 0);
    RealVector uniform = DiagonalState::depolarizing(3, 1.0 / 8).exact_a();
    for (double x : uniform) {
        ASSERT_NEAR(x, 1.0 / 8, 1e-15);
    }
    ASSERT_THROW(DiagonalState::depolarizing(2, 1.1), std::invalid_argument);
    ASSERT_THROW(DiagonalState::depolarizing(2, -0.1), std::invalid_argument);
    ASSERT_THROW(DiagonalState::depolarizing(0, 0.5), std::invalid_argument);
}

TEST(dephasing, examples) {
    expect_vector_near(DiagonalState::dephasing_iid(3, 0.0).exact_a(), {1, 0, 0, 0, 0, 0, 0, 0}, 0);
    expect_vector_near(DiagonalState::dephasing_iid(1, 0.2).exact_a(), {0.8, 0.2}, 1e-15);
    RealVector a = DiagonalState::dephasing_iid(3, 0.1).exact_a();
    ASSERT_NEAR(a[0], 0.729, 1e-15);
    for (uint64_t b : {1, 2, 4}) {
        ASSERT_NEAR(a[b], 0.081, 1e-15);
    }
    // Enumerating all 8 strings by weight.
    for (uint64_t b = 0; b < 8; b++) {
        int h = std::popcount(b);
        double want = 1;
        for (int k = 0; k < 3; k++) {
            want *= k < h ? 0.1 : 0.9;
        }
        ASSERT_NEAR(a[b], want, 1e-15);
    }
    ASSERT_THROW(DiagonalState::dephasing_iid(3, 1.5), std::invalid_argument);

    DiagonalState matched = DiagonalState::dephasing_with_fidelity(40, 0.53);
    ASSERT_NEAR(matched.fidelity(), 0.53, 1e-12);
}

TEST(bimodal, examples) {
    expect_vector_near(DiagonalState::bimodal(2, 1.0, BitVec::ones(2)).exact_a(), {1, 0, 0, 0}, 0);
    expect_vector_near(DiagonalState::bimodal(2, 0.5, BitVec::from_string("11")).exact_a(), {0.5, 0, 0, 0.5}, 0);
    ASSERT_THROW(DiagonalState::bimodal(2, 0.5, BitVec(2)), std::invalid_argument);
    ASSERT_THROW(DiagonalState::bimodal(2, 0.5, BitVec::ones(3)), std::invalid_argument);
}

TEST(explicit_state, validation) {
    DiagonalState e = DiagonalState::explicit_state({0.25, 0.25, 0.5, 0.0});
    ASSERT_EQ(e.n(), 2);
    ASSERT_EQ(e.model_name(), "explicit");
    ASSERT_THROW(DiagonalState::explicit_state({1.0}), std::invalid_argument);
    ASSERT_THROW(DiagonalState::explicit_state({0.5, 0.25, 0.25}), std::invalid_argument);
    ASSERT_THROW(DiagonalState::explicit_state({1.2, -0.2}), std::invalid_argument);
    ASSERT_THROW(DiagonalState::explicit_state({0.5, 0.4}), std::invalid_argument);
}

TEST(diagonal_state, exact_a_normalized_and_expectation_matches_signed_sum) {
    Rng rng = test_rng(30);
    for (size_t n : {1, 3, 6, 10, 16}) {
        auto zoo = model_zoo(n);
        zoo.push_back(DiagonalState::explicit_state(random_probability_vector(std::min<size_t>(n, 8), rng)));
        for (const auto &state : zoo) {
            RealVector a = state.exact_a();
            double total = 0;
            for (double x : a) {
                total += x;
            }
            ASSERT_NEAR(total, 1.0, 1e-9) << state.model_name() << " n=" << n;
            if (state.n() > 8) {
                continue;
            }
            RealVector w = naive_wht(a);
            for (uint64_t i = 0; i < a.size(); i++) {
                ASSERT_NEAR(state.expectation(BitVec::from_uint64(state.n(), i)), w[i], 1e-12)
                    << state.model_name() << " i=" << i;
            }
        }
    }
}

TEST(diagonal_state, bimodal_expectation_closed_form) {
    BitVec b_star = BitVec::from_string("1011");
    DiagonalState s = DiagonalState::bimodal(4, 0.7, b_star);
    for (uint64_t i = 0; i < 16; i++) {
        BitVec bi = BitVec::from_uint64(4, i);
        double want = 0.7 + 0.3 * (dot(bi, b_star) ? -1 : 1);
        ASSERT_NEAR(s.expectation(bi), want, 1e-15);
    }
}

TEST(diagonal_state, implicit_models_work_at_large_n) {
    Rng rng = test_rng(31);
    for (const auto &state : model_zoo(200)) {
        BitVec b = state.sample(rng);
        ASSERT_EQ(b.size(), 200);
        ASSERT_GE(state.probability(BitVec(200)), 0.0);
        ASSERT_THROW(state.exact_a(), std::invalid_argument);
    }
}

TEST(sample_error, trivial_and_binomial_cases) {
    Rng rng = test_rng(32);
    DiagonalState pure = DiagonalState::depolarizing(5, 1.0);
    for (int k = 0; k < 1000; k++) {
        ASSERT_TRUE(pure.sample(rng).none());
    }

    const int shots = 100000;
    BitVec b_star = BitVec::from_string("0110");
    DiagonalState bi = DiagonalState::bimodal(4, 0.6, b_star);
    int hits = 0;
    for (int k = 0; k < shots; k++) {
        BitVec b = bi.sample(rng);
        ASSERT_TRUE(b.none() || b == b_star);
        hits += b == b_star;
    }
    double sigma = std::sqrt(0.4 * 0.6 / shots);
    ASSERT_NEAR(hits / double(shots), 0.4, 3 * sigma);

    DiagonalState deph = DiagonalState::dephasing_iid(3, 0.1);
    int zeros = 0;
    for (int k = 0; k < shots; k++) {
        zeros += deph.sample(rng).none();
    }
    sigma = std::sqrt(0.729 * 0.271 / shots);
    ASSERT_NEAR(zeros / double(shots), 0.729, 3 * sigma);
}

TEST(sample_error, empirical_histogram_converges) {
    Rng rng = test_rng(33);
    const int shots = 1000000;
    std::vector<DiagonalState> states = {
        DiagonalState::depolarizing(3, 0.6),
        DiagonalState::dephasing_iid(6, 0.1),
        DiagonalState::dephasing_iid(6, 0.4),
        DiagonalState::bimodal(10, 0.55, BitVec::ones(10)),
        DiagonalState::dephasing_iid(10, 0.02),
        DiagonalState::explicit_state(random_probability_vector(4, rng)),
    };
    for (const auto &state : states) {
        RealVector counts(size_t{1} << state.n(), 0.0);
        BitVec b(state.n());
        for (int k = 0; k < shots; k++) {
            state.sample_into(b, rng);
            counts[b.to_uint64()] += 1;
        }
        RealVector a = state.exact_a();
        double tv = 0;
        for (size_t k = 0; k < a.size(); k++) {
            tv += std::abs(counts[k] / shots - a[k]);
        }
        tv /= 2;
        ASSERT_LE(tv, 5 / std::sqrt(double(shots))) << state.model_name() << " n=" << state.n();
    }
}

TEST(channel_to_diagonal, examples) {
    Graph line = graph_from_edges(3, {{0, 1}, {1, 2}});
    PauliChannel identity{{{PauliString(3), 1.0}}};
    expect_vector_near(channel_to_diagonal(line, identity).exact_a(), {1, 0, 0, 0, 0, 0, 0, 0}, 0);

    RealVector single = {0, 0, 0, 0, 1, 0, 0, 0};  // b = 001, qubit 2 is bit 2
    PauliChannel z3{{{PauliString::from_string("IIZ"), 1.0}}};
    expect_vector_near(channel_to_diagonal(line, z3).exact_a(), single, 0);

    PauliChannel mixed{{{PauliString::from_string("IIZ"), 0.5}, {PauliString::from_string("ZXI"), 0.5}}};
    expect_vector_near(channel_to_diagonal(line, mixed).exact_a(), single, 0);

    PauliChannel bad{{{PauliString::from_string("IIZ"), 0.7}}};
    ASSERT_THROW(channel_to_diagonal(line, bad), std::invalid_argument);
    PauliChannel wrong_n{{{PauliString::from_string("IZ"), 1.0}}};
    ASSERT_THROW(channel_to_diagonal(line, wrong_n), std::invalid_argument);
    PauliChannel negative{{{PauliString::from_string("IIZ"), 1.5}, {PauliString::from_string("ZII"), -0.5}}};
    ASSERT_THROW(channel_to_diagonal(line, negative), std::invalid_argument);
}

TEST(channel_to_diagonal, coset_substitution_invariance_and_dense_check) {
    Rng rng = test_rng(34);
    for (size_t n = 1; n <= 4; n++) {
        Graph g = random_graph(n, rng);
        PauliChannel channel;
        RealVector rates = random_probability_vector(3, rng);
        for (double rate : rates) {
            PauliString p(n);
            randomize(p.x, rng);
            randomize(p.z, rng);
            channel.terms.emplace_back(p, rate);
        }
        RealVector a = channel_to_diagonal(g, channel).exact_a();

        PauliChannel swapped = channel;
        for (auto &[p, rate] : swapped.terms) {
            auto members = coset_members(g, coset_label(g, p));
            p = members[rng() % members.size()];
        }
        ASSERT_EQ(channel_to_diagonal(g, swapped).exact_a(), a);

        // a_b = sum_P lambda_P |<Phi_b| P |Phi_0>|^2 evaluated densely.
        oracle::Amplitudes phi0 = oracle::dense_graph_state(g);
        for (uint64_t b = 0; b < a.size(); b++) {
            oracle::Amplitudes phib = oracle::dense_basis_state(g, BitVec::from_uint64(n, b));
            double want = 0;
            for (const auto &[p, rate] : channel.terms) {
                want += rate * std::norm(oracle::inner(phib, oracle::apply_pauli(p, phi0)));
            }
            ASSERT_NEAR(a[b], want, 1e-12);
        }
    }
}
