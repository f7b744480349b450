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

// Dense state-vector and density-matrix reference implementations. Slow and
// exponential by construction; every routine carries a size guard.
//
// Basis convention: qubit q is bit q of the computational-basis index. For
// two copies on 2n qubits, copy 1 occupies qubits [0, n) and copy 2
// occupies [n, 2n).

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsqn/bell_sampler.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/tableau.hpp"
#include "bsqn/transforms.hpp"

namespace bsqn::oracle {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr size_t kMaxPureOrder = 10;
inline constexpr size_t kMaxDensityOrder = 5;
inline constexpr size_t kMaxBellOrder = 4;

inline void guard(size_t n, size_t limit, const char *what) {
    if (n > limit) {
        throw std::invalid_argument(std::string(what) + " limited to n <= " + std::to_string(limit));
    }
}

/// Row-major 2^n x 2^n density matrix.
struct DensityMatrix {
    size_t n = 0;
    std::vector<Complex> data;

    size_t dim() const {
        return size_t{1} << n;
    }
    Complex &at(size_t row, size_t col) {
        return data[row * dim() + col];
    }
    const Complex &at(size_t row, size_t col) const {
        return data[row * dim() + col];
    }
    Complex trace() const {
        Complex t = 0;
        for (size_t k = 0; k < dim(); k++) {
            t += at(k, k);
        }
        return t;
    }
};

/// |Phi_b> = U_b prod_{(u,v) in E} CZ_{u,v} |+>^n.
inline Amplitudes dense_basis_state(const Graph &g, const BitVec &b) {
    guard(g.n(), kMaxPureOrder, "dense_basis_state");
    const size_t n = g.n();
    const uint64_t dim = uint64_t{1} << n;
    const uint64_t frame = b.to_uint64();
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    auto edges = g.edges();
    Amplitudes psi(dim);
    for (uint64_t x = 0; x < dim; x++) {
        int parity = std::popcount(x & frame);
        for (auto [u, v] : edges) {
            parity += ((x >> u) & (x >> v)) & 1;
        }
        psi[x] = (parity & 1) ? -amp : amp;
    }
    return psi;
}

inline Amplitudes dense_graph_state(const Graph &g) {
    return dense_basis_state(g, BitVec(g.n()));
}

/// P|psi> for the Hermitian representative of p (Y = iXZ per site).
inline Amplitudes apply_pauli(const PauliString &p, const Amplitudes &psi) {
    const uint64_t dim = psi.size();
    const uint64_t x = p.x.to_uint64();
    const uint64_t z = p.z.to_uint64();
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex y_phase = kIPow[std::popcount(x & z) & 3];
    Amplitudes out(dim);
    for (uint64_t j = 0; j < dim; j++) {
        Complex phase = (std::popcount(z & j) & 1) ? -y_phase : y_phase;
        out[j ^ x] = phase * psi[j];
    }
    return out;
}

inline Complex inner(const Amplitudes &a, const Amplitudes &b) {
    Complex total = 0;
    for (size_t k = 0; k < a.size(); k++) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

/// <psi|P|psi>.
inline double dense_expectation(const Amplitudes &psi, const PauliString &p) {
    return inner(psi, apply_pauli(p, psi)).real();
}

/// Tr(rho P) for the Hermitian representative of p.
inline double dense_expectation(const DensityMatrix &rho, const PauliString &p) {
    guard(rho.n, kMaxDensityOrder, "dense_expectation");
    const uint64_t dim = rho.dim();
    const uint64_t x = p.x.to_uint64();
    const uint64_t z = p.z.to_uint64();
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex y_phase = kIPow[std::popcount(x & z) & 3];
    // P|j> = phase(j) |j ^ x>, so Tr(rho P) = sum_j rho[j][j ^ x] phase(j).
    Complex total = 0;
    for (uint64_t j = 0; j < dim; j++) {
        Complex phase = (std::popcount(z & j) & 1) ? -y_phase : y_phase;
        total += rho.at(j, j ^ x) * phase;
    }
    return total.real();
}

/// Sign s in {+1, -1} with s * P_b (Hermitian representative) equal to the
/// group element prod_j S_j^{b_j}, which has eigenvalue +1 on |Phi_G>.
inline double stabilizer_sign(const Graph &g, const BitVec &b) {
    return dense_expectation(dense_graph_state(g), stabilizer_element(g, b)) > 0 ? 1.0 : -1.0;
}

inline DensityMatrix outer(const Amplitudes &psi, size_t n) {
    DensityMatrix rho{n, std::vector<Complex>(psi.size() * psi.size())};
    for (size_t r = 0; r < psi.size(); r++) {
        for (size_t c = 0; c < psi.size(); c++) {
            rho.at(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

/// Tr(rho prod_j S_j^{b_j}): the signed stabilizer expectation w_b.
inline double dense_stabilizer_expectation(const DensityMatrix &rho, const Graph &g, const BitVec &b) {
    return stabilizer_sign(g, b) * dense_expectation(rho, stabilizer_element(g, b));
}

/// rho = sum_b a_b |Phi_b><Phi_b|.
inline DensityMatrix dense_diagonal_density(const Graph &g, const RealVector &a) {
    guard(g.n(), kMaxDensityOrder, "dense_diagonal_density");
    if (a.size() != (size_t{1} << g.n())) {
        throw std::invalid_argument("dense_diagonal_density: a must have length 2^n");
    }
    const size_t dim = a.size();
    DensityMatrix rho{g.n(), std::vector<Complex>(dim * dim)};
    for (uint64_t b = 0; b < dim; b++) {
        if (a[b] == 0) {
            continue;
        }
        Amplitudes phi = dense_basis_state(g, BitVec::from_uint64(g.n(), b));
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                rho.at(r, c) += a[b] * phi[r] * std::conj(phi[c]);
            }
        }
    }
    return rho;
}

/// a_b = <Phi_b|rho|Phi_b> for every b.
inline RealVector dense_diagonal_elements(const Graph &g, const DensityMatrix &rho) {
    guard(g.n(), kMaxDensityOrder, "dense_diagonal_elements");
    const size_t dim = rho.dim();
    RealVector a(dim);
    for (uint64_t b = 0; b < dim; b++) {
        Amplitudes phi = dense_basis_state(g, BitVec::from_uint64(g.n(), b));
        Complex total = 0;
        for (size_t r = 0; r < dim; r++) {
            Complex row = 0;
            for (size_t c = 0; c < dim; c++) {
                row += rho.at(r, c) * phi[c];
            }
            total += std::conj(phi[r]) * row;
        }
        a[b] = total.real();
    }
    return a;
}

/// |phi_beta> = tensor_k (Z^{z_k} X^{x_k} (x) I) |Phi_00> on the pair
/// (qubit k, qubit n + k), with beta packed as in BellOutcome.
inline Amplitudes dense_bell_basis_state(size_t n, uint64_t beta) {
    guard(n, kMaxBellOrder, "dense_bell_basis_state");
    const uint64_t dim = uint64_t{1} << (2 * n);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    Amplitudes out(dim, 0.0);
    for (uint64_t u = 0; u < (uint64_t{1} << n); u++) {
        uint64_t v = 0;
        int sign = 0;
        for (size_t k = 0; k < n; k++) {
            bool zk = (beta >> (2 * k)) & 1;
            bool xk = (beta >> (2 * k + 1)) & 1;
            bool uk = (u >> k) & 1;
            // Component |u_k, v_k> with u_k = v_k XOR x_k, phase (-1)^{z_k u_k}.
            v |= uint64_t(uk ^ xk) << k;
            sign += zk & uk;
        }
        out[u | (v << n)] = (sign & 1) ? -amp : amp;
    }
    return out;
}

inline Amplitudes tensor(const Amplitudes &first, const Amplitudes &second) {
    Amplitudes out(first.size() * second.size());
    for (size_t v = 0; v < second.size(); v++) {
        for (size_t u = 0; u < first.size(); u++) {
            out[u + first.size() * v] = first[u] * second[v];
        }
    }
    return out;
}

inline PauliString doubled(const PauliString &p) {
    const size_t n = p.n();
    PauliString out(2 * n);
    for (size_t k = 0; k < n; k++) {
        out.x.set(k, p.x.get(k));
        out.z.set(k, p.z.get(k));
        out.x.set(n + k, p.x.get(k));
        out.z.set(n + k, p.z.get(k));
    }
    return out;
}

/// <phi_beta| P (x) P |phi_beta>, computed on the dense 2n-qubit vector.
inline double dense_pair_eigenvalue(size_t n, uint64_t beta, const PauliString &p) {
    Amplitudes phi = dense_bell_basis_state(n, beta);
    return dense_expectation(phi, doubled(p));
}

/// Exact Pr(beta) = <phi_beta| rho (x) rho |phi_beta> for the graph-diagonal
/// rho with vector a; indexed by the packed beta.
inline RealVector dense_bell_distribution(const Graph &g, const RealVector &a) {
    const size_t n = g.n();
    guard(n, kMaxBellOrder, "dense_bell_distribution");
    const uint64_t d = uint64_t{1} << n;
    if (a.size() != d) {
        throw std::invalid_argument("dense_bell_distribution: a must have length 2^n");
    }
    std::vector<Amplitudes> basis(d);
    for (uint64_t b = 0; b < d; b++) {
        basis[b] = dense_basis_state(g, BitVec::from_uint64(n, b));
    }
    std::vector<Amplitudes> bell(d * d);
    for (uint64_t beta = 0; beta < d * d; beta++) {
        bell[beta] = dense_bell_basis_state(n, beta);
    }
    RealVector pr(d * d, 0.0);
    for (uint64_t b = 0; b < d; b++) {
        for (uint64_t bp = 0; bp < d; bp++) {
            double weight = a[b] * a[bp];
            if (weight == 0) {
                continue;
            }
            Amplitudes pair = tensor(basis[b], basis[bp]);
            for (uint64_t beta = 0; beta < d * d; beta++) {
                pr[beta] += weight * std::norm(inner(bell[beta], pair));
            }
        }
    }
    return pr;
}

/// Syndrome law obtained by pushing the exact Bell distribution through
/// syndrome_from_outcome.
inline RealVector dense_syndrome_distribution(const Graph &g, const RealVector &a) {
    const size_t n = g.n();
    RealVector bell = dense_bell_distribution(g, a);
    RealVector out(size_t{1} << n, 0.0);
    BitVec beta(2 * n);
    for (uint64_t k = 0; k < bell.size(); k++) {
        beta.words()[0] = k;
        BitVec s = syndrome_from_outcome(g, BellOutcome{beta});
        out[s.to_uint64()] += bell[k];
    }
    return out;
}

}  // namespace bsqn::oracle
