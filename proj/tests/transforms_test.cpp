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

#include "bsqn/transforms.hpp"

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

RealVector random_vector(size_t n, Rng &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealVector v(size_t{1} << n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

}  // namespace

TEST(wht, examples) {
    expect_vector_near(wht({1, 0, 0, 0}), {1, 1, 1, 1}, 0);
    expect_vector_near(wht({0.7, 0.1, 0.1, 0.1}), {1.0, 0.6, 0.6, 0.6}, 1e-15);
    expect_vector_near(wht({2.5}), {2.5}, 0);
}

TEST(wht, rejects_non_power_of_two) {
    ASSERT_THROW(wht(RealVector(3)), std::invalid_argument);
    ASSERT_THROW(wht(RealVector()), std::invalid_argument);
    ASSERT_THROW(a_from_w(RealVector(6)), std::invalid_argument);
}

TEST(wht, matches_naive_signed_sum) {
    Rng rng = test_rng(20);
    for (size_t n = 0; n <= 8; n++) {
        RealVector v = random_vector(n, rng);
        expect_vector_near(wht(v), naive_wht(v), 1e-10);
    }
}

TEST(wht, involution_and_parseval) {
    Rng rng = test_rng(21);
    for (size_t n : {1, 4, 9, 16}) {
        RealVector v = random_vector(n, rng);
        RealVector twice = wht(wht(v));
        double scale = static_cast<double>(v.size());
        double sq_v = 0, sq_t = 0;
        RealVector once = wht(v);
        for (size_t k = 0; k < v.size(); k++) {
            ASSERT_NEAR(twice[k], scale * v[k], 1e-9);
            sq_v += v[k] * v[k];
            sq_t += once[k] * once[k];
        }
        ASSERT_NEAR(sq_t, scale * sq_v, 1e-9 * sq_t);
    }
}

TEST(a_from_w, examples_and_round_trip) {
    expect_vector_near(a_from_w({1, 1, 1, 1}), {1, 0, 0, 0}, 0);
    expect_vector_near(w_from_a({0.25, 0.25, 0.25, 0.25}), {1, 0, 0, 0}, 1e-15);
    expect_vector_near(a_from_w({1.0, 0.6, 0.6, 0.6}), {0.7, 0.1, 0.1, 0.1}, 1e-15);
    expect_vector_near(w_from_a({0.7, 0.1, 0.1, 0.1}), {1.0, 0.6, 0.6, 0.6}, 1e-15);

    Rng rng = test_rng(22);
    for (size_t n = 1; n <= 12; n++) {
        RealVector a = random_probability_vector(n, rng);
        expect_vector_near(a_from_w(w_from_a(a)), a, 1e-12);
    }
}

TEST(error_metrics, examples) {
    RealVector a = {0.7, 0.1, 0.1, 0.1};
    ErrorMetrics zero = error_metrics(a, a);
    ASSERT_EQ(zero.l2, 0);
    ASSERT_EQ(zero.linf, 0);
    ASSERT_EQ(zero.fidelity_error, 0);

    RealVector shifted = a;
    shifted[0] += 0.03;
    ErrorMetrics one = error_metrics(shifted, a);
    ASSERT_NEAR(one.l2, 0.03, 1e-15);
    ASSERT_NEAR(one.linf, 0.03, 1e-15);
    ASSERT_NEAR(one.fidelity_error, 0.03, 1e-15);

    Rng rng = test_rng(23);
    for (int trial = 0; trial < 50; trial++) {
        RealVector p = random_probability_vector(4, rng);
        RealVector q = random_probability_vector(4, rng);
        ErrorMetrics m = error_metrics(p, q);
        ASSERT_GE(m.l2, m.linf);
        ASSERT_GE(m.linf, m.fidelity_error);
    }
    ASSERT_THROW(error_metrics(RealVector(2), RealVector(4)), std::invalid_argument);
}

TEST(hellinger, examples) {
    ASSERT_NEAR(hellinger_diagnostic(RealVector{0.3, 0.7}, RealVector{0.3, 0.7}), 0, 1e-15);
    ASSERT_NEAR(hellinger_diagnostic(RealVector{1, 0, 0, 0}, RealVector{0, 0, 0.5, 0.5}), 1, 1e-15);
    ASSERT_NEAR(hellinger_diagnostic(RealVector{1, 0}, RealVector{0.5, 0.5}), std::sqrt(1 - 1 / std::sqrt(2.0)),
                1e-15);
    ASSERT_THROW(hellinger_diagnostic(RealVector{1.5, -0.5}, RealVector{0.5, 0.5}), std::invalid_argument);
    ASSERT_THROW(hellinger_diagnostic(RealVector{0.5, 0.4}, RealVector{0.5, 0.5}), std::invalid_argument);
}
