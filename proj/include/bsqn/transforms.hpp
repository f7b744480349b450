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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsqn {

/// Real vector of length 2^n indexed by n-bit strings (bit j of the index is
/// qubit j). Holds graph-diagonal vectors a, stabilizer expectations w, and
/// differences of either.
using RealVector = std::vector<double>;

/// Largest n for which explicit 2^n vectors are materialized.
inline constexpr size_t kMaxExplicitOrder = 26;

inline size_t log2_length(size_t length) {
    if (length == 0 || !std::has_single_bit(length)) {
        throw std::invalid_argument("vector length " + std::to_string(length) + " is not a power of two");
    }
    return static_cast<size_t>(std::countr_zero(length));
}

/// Unnormalized Walsh-Hadamard butterfly:
/// out[b] = sum_i (-1)^{popcount(b AND i)} v[i].
inline void wht_inplace(std::span<double> v) {
    log2_length(v.size());
    const size_t len = v.size();
    for (size_t h = 1; h < len; h <<= 1) {
        for (size_t i = 0; i < len; i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                double u = v[j];
                double t = v[j + h];
                v[j] = u + t;
                v[j + h] = u - t;
            }
        }
    }
}

inline RealVector wht(RealVector v) {
    wht_inplace(v);
    return v;
}

/// a = Q w with Q = Q0 / 2^n.
inline RealVector a_from_w(RealVector w) {
    wht_inplace(w);
    const double scale = 1.0 / static_cast<double>(w.size());
    for (auto &x : w) {
        x *= scale;
    }
    return w;
}

/// w = Q0^T a, i.e. Tr(rho P_i) = sum_b (-1)^{f_b(P_i)} a_b.
inline RealVector w_from_a(RealVector a) {
    wht_inplace(a);
    return a;
}

struct ErrorMetrics {
    double l2 = 0;
    double linf = 0;
    double fidelity_error = 0;
};

/// Norms of a_hat - a_true; fidelity_error is |Delta a_0|.
inline ErrorMetrics error_metrics(std::span<const double> a_hat, std::span<const double> a_true) {
    if (a_hat.size() != a_true.size()) {
        throw std::invalid_argument("error_metrics: length mismatch");
    }
    ErrorMetrics m;
    double sq = 0;
    for (size_t k = 0; k < a_hat.size(); k++) {
        double d = std::abs(a_hat[k] - a_true[k]);
        sq += d * d;
        m.linf = std::max(m.linf, d);
    }
    m.l2 = std::sqrt(sq);
    if (!a_hat.empty()) {
        m.fidelity_error = std::abs(a_hat[0] - a_true[0]);
    }
    return m;
}

/// Hellinger distance (1/sqrt 2) ||sqrt p - sqrt q||_2 between two
/// probability vectors.
inline double hellinger_diagnostic(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("hellinger_diagnostic: length mismatch");
    }
    double sum_p = 0, sum_q = 0, sq = 0;
    for (size_t k = 0; k < p.size(); k++) {
        if (p[k] < 0 || q[k] < 0) {
            throw std::invalid_argument("hellinger_diagnostic: negative probability at index " + std::to_string(k));
        }
        sum_p += p[k];
        sum_q += q[k];
        double d = std::sqrt(p[k]) - std::sqrt(q[k]);
        sq += d * d;
    }
    if (std::abs(sum_p - 1) > 1e-9 || std::abs(sum_q - 1) > 1e-9) {
        throw std::invalid_argument("hellinger_diagnostic: inputs must each sum to 1");
    }
    return std::sqrt(sq / 2);
}

}  // namespace bsqn
