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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsqn/bitvec.hpp"
#include "bsqn/graph.hpp"
#include "bsqn/rng.hpp"

namespace bsqn {

/// Aaronson-Gottesman stabilizer tableau with destabilizers.
///
/// Rows [0, m) are destabilizers, rows [m, 2m) stabilizers, row 2m is
/// scratch space for deterministic measurements. Each row is a signed Pauli
/// string; sign bit 1 means a -1 prefactor.
class Tableau {
   public:
    /// |0...0> on m qubits.
    explicit Tableau(size_t m) : m_(m), xs_(2 * m + 1, BitVec(m)), zs_(2 * m + 1, BitVec(m)), signs_(2 * m + 1, 0) {
        for (size_t q = 0; q < m; q++) {
            xs_[q].set(q, true);
            zs_[m + q].set(q, true);
        }
    }

    size_t num_qubits() const {
        return m_;
    }

    void h(size_t q) {
        check_qubit(q);
        for (size_t i = 0; i < 2 * m_; i++) {
            bool x = xs_[i].get(q), z = zs_[i].get(q);
            signs_[i] ^= x & z;
            xs_[i].set(q, z);
            zs_[i].set(q, x);
        }
    }

    void s(size_t q) {
        check_qubit(q);
        for (size_t i = 0; i < 2 * m_; i++) {
            bool x = xs_[i].get(q), z = zs_[i].get(q);
            signs_[i] ^= x & z;
            zs_[i].set(q, z ^ x);
        }
    }

    void z(size_t q) {
        check_qubit(q);
        for (size_t i = 0; i < 2 * m_; i++) {
            signs_[i] ^= xs_[i].get(q);
        }
    }

    void x(size_t q) {
        check_qubit(q);
        for (size_t i = 0; i < 2 * m_; i++) {
            signs_[i] ^= zs_[i].get(q);
        }
    }

    void cx(size_t control, size_t target) {
        check_pair(control, target);
        for (size_t i = 0; i < 2 * m_; i++) {
            bool xc = xs_[i].get(control), zc = zs_[i].get(control);
            bool xt = xs_[i].get(target), zt = zs_[i].get(target);
            signs_[i] ^= xc & zt & (xt ^ zc ^ 1);
            xs_[i].set(target, xt ^ xc);
            zs_[i].set(control, zc ^ zt);
        }
    }

    void cz(size_t a, size_t b) {
        check_pair(a, b);
        h(b);
        cx(a, b);
        h(b);
    }

    bool is_deterministic_z(size_t q) const {
        check_qubit(q);
        for (size_t p = m_; p < 2 * m_; p++) {
            if (xs_[p].get(q)) {
                return false;
            }
        }
        return true;
    }

    /// Computational-basis measurement of qubit q; collapses the state.
    template <typename URBG>
    bool measure_z(size_t q, URBG &rng) {
        check_qubit(q);
        size_t p = m_;
        while (p < 2 * m_ && !xs_[p].get(q)) {
            p++;
        }
        if (p < 2 * m_) {
            // Random outcome: every other row anticommuting with Z_q absorbs row p.
            for (size_t i = 0; i < 2 * m_; i++) {
                if (i != p && xs_[i].get(q)) {
                    rowsum(i, p);
                }
            }
            xs_[p - m_] = xs_[p];
            zs_[p - m_] = zs_[p];
            signs_[p - m_] = signs_[p];
            xs_[p].clear();
            zs_[p].clear();
            zs_[p].set(q, true);
            signs_[p] = coin(rng);
            return signs_[p];
        }
        const size_t scratch = 2 * m_;
        xs_[scratch].clear();
        zs_[scratch].clear();
        signs_[scratch] = 0;
        for (size_t i = 0; i < m_; i++) {
            if (xs_[i].get(q)) {
                rowsum(scratch, i + m_);
            }
        }
        return signs_[scratch];
    }

    // Row accessors, mainly for tests.
    PauliString stabilizer(size_t k) const {
        return PauliString(xs_[m_ + k], zs_[m_ + k]);
    }
    PauliString destabilizer(size_t k) const {
        return PauliString(xs_[k], zs_[k]);
    }
    bool stabilizer_sign(size_t k) const {
        return signs_[m_ + k];
    }
    bool destabilizer_sign(size_t k) const {
        return signs_[k];
    }

    /// Destabilizer k anticommutes exactly with stabilizer k; every other pair
    /// of the 2m rows commutes.
    bool is_symplectic() const {
        for (size_t i = 0; i < 2 * m_; i++) {
            for (size_t j = i + 1; j < 2 * m_; j++) {
                bool anti = dot(xs_[i], zs_[j]) ^ dot(zs_[i], xs_[j]);
                bool expected = j == i + m_;
                if (anti != expected) {
                    return false;
                }
            }
        }
        return true;
    }

    bool operator==(const Tableau &other) const = default;

   private:
    // Exponent of i picked up when multiplying single-qubit Paulis
    // (x1,z1) * (x2,z2), in {-1, 0, 1}.
    static int g(bool x1, bool z1, bool x2, bool z2) {
        if (!x1 && !z1) {
            return 0;
        }
        if (x1 && z1) {
            return int(z2) - int(x2);
        }
        if (x1) {
            return int(z2) * (2 * int(x2) - 1);
        }
        return int(x2) * (1 - 2 * int(z2));
    }

    // row h <- row i * row h, tracking the sign.
    void rowsum(size_t h, size_t i) {
        int total = 2 * signs_[h] + 2 * signs_[i];
        for (size_t q = 0; q < m_; q++) {
            total += g(xs_[i].get(q), zs_[i].get(q), xs_[h].get(q), zs_[h].get(q));
        }
        total = ((total % 4) + 4) % 4;
        signs_[h] = total == 2;
        xs_[h] ^= xs_[i];
        zs_[h] ^= zs_[i];
    }

    void check_qubit(size_t q) const {
        if (q >= m_) {
            throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(m_) +
                                    "-qubit tableau");
        }
    }
    void check_pair(size_t a, size_t b) const {
        check_qubit(a);
        check_qubit(b);
        if (a == b) {
            throw std::invalid_argument("two-qubit gate needs distinct qubits");
        }
    }

    size_t m_;
    std::vector<BitVec> xs_;
    std::vector<BitVec> zs_;
    std::vector<uint8_t> signs_;
};

/// Outcome of one transversal Bell measurement over 2n qubits.
///
/// Node k's pair identifies the Bell state Z^{z_k} X^{x_k} (x) I |Phi_00>.
/// Bit 2k holds z_k (read from copy 1 after the Hadamard), bit 2k+1 holds
/// x_k (read from copy 2).
struct BellOutcome {
    BitVec beta;

    size_t n() const {
        return beta.size() / 2;
    }
    bool z_bit(size_t k) const {
        return beta.get(2 * k);
    }
    bool x_bit(size_t k) const {
        return beta.get(2 * k + 1);
    }
    BitVec z_part() const {
        BitVec out(n());
        for (size_t k = 0; k < n(); k++) {
            out.set(k, z_bit(k));
        }
        return out;
    }
    BitVec x_part() const {
        BitVec out(n());
        for (size_t k = 0; k < n(); k++) {
            out.set(k, x_bit(k));
        }
        return out;
    }
    static BellOutcome from_parts(const BitVec &z_part, const BitVec &x_part) {
        BellOutcome out{BitVec(2 * z_part.size())};
        for (size_t k = 0; k < z_part.size(); k++) {
            out.beta.set(2 * k, z_part.get(k));
            out.beta.set(2 * k + 1, x_part.get(k));
        }
        return out;
    }
};

/// Prepares |Phi_b> on qubits [offset, offset + n).
inline void prepare_graph_basis_state(Tableau &t, const Graph &g, const BitVec &b, size_t offset) {
    for (size_t v = 0; v < g.n(); v++) {
        t.h(offset + v);
    }
    for (auto [u, v] : g.edges()) {
        t.cz(offset + u, offset + v);
    }
    for (size_t v = 0; v < g.n(); v++) {
        if (b.get(v)) {
            t.z(offset + v);
        }
    }
}

/// Bell sampling on |Phi_b> (x) |Phi_b'>: transversal CNOT from copy 1 to
/// copy 2, Hadamard on copy 1, then computational readout of all 2n qubits.
template <typename URBG>
BellOutcome run_bell_circuit(const Graph &g, const BitVec &b, const BitVec &b_prime, URBG &rng) {
    const size_t n = g.n();
    if (b.size() != n || b_prime.size() != n) {
        throw std::invalid_argument("run_bell_circuit: error strings must have length n");
    }
    Tableau t(2 * n);
    prepare_graph_basis_state(t, g, b, 0);
    prepare_graph_basis_state(t, g, b_prime, n);
    for (size_t k = 0; k < n; k++) {
        t.cx(k, n + k);
    }
    for (size_t k = 0; k < n; k++) {
        t.h(k);
    }
    BellOutcome out{BitVec(2 * n)};
    for (size_t k = 0; k < n; k++) {
        out.beta.set(2 * k, t.measure_z(k, rng));
        out.beta.set(2 * k + 1, t.measure_z(n + k, rng));
    }
    return out;
}

}  // namespace bsqn
