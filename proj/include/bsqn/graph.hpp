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
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bsqn/bitvec.hpp"

namespace bsqn {

/// Simple undirected graph stored as n adjacency rows of n bits.
///
/// Vertex j owns stabilizer generator S_j = X_j prod_{u in NN(j)} Z_u and
/// bit j of every stabilizer index. Immutable after construction.
class Graph {
   public:
    Graph() = default;

    size_t n() const {
        return rows_.size();
    }
    const BitVec &neighbors(size_t v) const {
        return rows_[v];
    }
    bool has_edge(size_t u, size_t v) const {
        return rows_[u].get(v);
    }
    size_t num_edges() const {
        size_t total = 0;
        for (const auto &r : rows_) {
            total += r.popcount();
        }
        return total / 2;
    }

    /// Edges (u, v) with u < v in row-major order.
    std::vector<std::pair<size_t, size_t>> edges() const {
        std::vector<std::pair<size_t, size_t>> out;
        for (size_t u = 0; u < n(); u++) {
            for (size_t v = u + 1; v < n(); v++) {
                if (has_edge(u, v)) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    /// A * x over F_2.
    BitVec adjacency_times(const BitVec &x) const {
        BitVec out(n());
        for (size_t j = 0; j < n(); j++) {
            if (dot(rows_[j], x)) {
                out.set(j, true);
            }
        }
        return out;
    }

    bool is_symmetric() const {
        for (size_t u = 0; u < n(); u++) {
            if (rows_[u].get(u)) {
                return false;
            }
            for (size_t v = u + 1; v < n(); v++) {
                if (rows_[u].get(v) != rows_[v].get(u)) {
                    return false;
                }
            }
        }
        return true;
    }

    static Graph from_edges(size_t n, const std::vector<std::pair<size_t, size_t>> &edges) {
        if (n == 0) {
            throw std::invalid_argument("graph needs at least one vertex");
        }
        Graph g;
        g.rows_.assign(n, BitVec(n));
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) {
                throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                            ") has a vertex outside [0," + std::to_string(n) + ")");
            }
            if (u == v) {
                throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
            }
            g.rows_[u].set(v, true);
            g.rows_[v].set(u, true);
        }
        return g;
    }

    /// Builds a graph from raw rows without checking symmetry. Only meant for
    /// fault-injection tests that need a corrupted adjacency matrix.
    static Graph unchecked(std::vector<BitVec> rows) {
        Graph g;
        g.rows_ = std::move(rows);
        return g;
    }

   private:
    std::vector<BitVec> rows_;
};

inline Graph complete_graph(size_t n) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

inline Graph path_graph(size_t n) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t u = 0; u + 1 < n; u++) {
        edges.emplace_back(u, u + 1);
    }
    return Graph::from_edges(n, edges);
}

inline Graph graph_from_edges(size_t n, const std::vector<std::pair<size_t, size_t>> &edges) {
    return Graph::from_edges(n, edges);
}

// Edge-list text format: vertex count on the first line, then one "u v" pair
// per line. Blank lines and lines starting with '#' are ignored.

inline Graph read_edge_list(std::istream &in) {
    std::string line;
    long long n = -1;
    std::vector<std::pair<size_t, size_t>> edges;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ss(line);
        if (n < 0) {
            if (!(ss >> n) || n <= 0) {
                throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                            ": expected a positive vertex count");
            }
            continue;
        }
        long long u, v;
        if (!(ss >> u >> v) || u < 0 || v < 0) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        edges.emplace_back(static_cast<size_t>(u), static_cast<size_t>(v));
    }
    if (n < 0) {
        throw std::invalid_argument("edge list is empty");
    }
    return Graph::from_edges(static_cast<size_t>(n), edges);
}

inline void write_edge_list(std::ostream &out, const Graph &g) {
    out << g.n() << "\n";
    for (auto [u, v] : g.edges()) {
        out << u << " " << v << "\n";
    }
}

/// Hermitian n-qubit Pauli operator, phase discarded.
///
/// Site k carries I, X, Z, Y for (x_k, z_k) = (0,0), (1,0), (0,1), (1,1).
struct PauliString {
    BitVec x;
    BitVec z;

    PauliString() = default;
    explicit PauliString(size_t n) : x(n), z(n) {
    }
    PauliString(BitVec x_part, BitVec z_part) : x(std::move(x_part)), z(std::move(z_part)) {
        if (x.size() != z.size()) {
            throw std::invalid_argument("PauliString x/z length mismatch");
        }
    }

    size_t n() const {
        return x.size();
    }

    static PauliString from_string(std::string_view text) {
        PauliString p(text.size());
        for (size_t k = 0; k < text.size(); k++) {
            switch (text[k]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.x.set(k, true);
                    break;
                case 'Z':
                    p.z.set(k, true);
                    break;
                case 'Y':
                    p.x.set(k, true);
                    p.z.set(k, true);
                    break;
                default:
                    throw std::invalid_argument("invalid Pauli character in '" + std::string(text) + "'");
            }
        }
        return p;
    }

    std::string str() const {
        static constexpr char kLetters[] = "IXZY";
        std::string out(n(), 'I');
        for (size_t k = 0; k < n(); k++) {
            out[k] = kLetters[x.get(k) + 2 * z.get(k)];
        }
        return out;
    }

    char letter(size_t k) const {
        static constexpr char kLetters[] = "IXZY";
        return kLetters[x.get(k) + 2 * z.get(k)];
    }

    /// Symplectic form: true when the two strings anticommute.
    bool anticommutes(const PauliString &other) const {
        return dot(x, other.z) ^ dot(z, other.x);
    }
    bool commutes(const PauliString &other) const {
        return !anticommutes(other);
    }

    /// Phase-free product.
    PauliString &operator*=(const PauliString &other) {
        x ^= other.x;
        z ^= other.z;
        return *this;
    }
    friend PauliString operator*(PauliString a, const PauliString &b) {
        a *= b;
        return a;
    }
    bool operator==(const PauliString &other) const = default;
    bool operator<(const PauliString &other) const {
        if (x == other.x) {
            return z < other.z;
        }
        return x < other.x;
    }
    bool is_identity() const {
        return x.none() && z.none();
    }
};

/// U_b = tensor of Z^{b_i}.
inline PauliString z_string(const BitVec &b) {
    return PauliString(BitVec(b.size()), b);
}

/// P_b = prod_j S_j^{b_j} with phases dropped: x-part b, z-part A b.
inline PauliString stabilizer_element(const Graph &g, const BitVec &b) {
    if (b.size() != g.n()) {
        throw std::invalid_argument("stabilizer index length " + std::to_string(b.size()) + " != graph order " +
                                    std::to_string(g.n()));
    }
    return PauliString(b, g.adjacency_times(b));
}

/// Commutation indicator of p with U_b: 1 iff they anticommute.
inline bool f_b(const BitVec &b, const PauliString &p) {
    return dot(b, p.x);
}

inline constexpr size_t kMaxCosetOrder = 20;

/// All 2^n phase-free Paulis in the coset U_b S_G, ordered by stabilizer index.
inline std::vector<PauliString> coset_members(const Graph &g, const BitVec &b) {
    if (g.n() > kMaxCosetOrder) {
        throw std::invalid_argument("coset enumeration limited to n <= " + std::to_string(kMaxCosetOrder));
    }
    if (b.size() != g.n()) {
        throw std::invalid_argument("coset index length does not match graph order");
    }
    std::vector<PauliString> out;
    out.reserve(size_t{1} << g.n());
    PauliString u_b = z_string(b);
    for (uint64_t c = 0; c < (uint64_t{1} << g.n()); c++) {
        out.push_back(u_b * stabilizer_element(g, BitVec::from_uint64(g.n(), c)));
    }
    return out;
}

/// Graph-basis label of the state P|Phi_G>: the b with P in (U_b S_G)^+.
inline BitVec coset_label(const Graph &g, const PauliString &p) {
    return p.z ^ g.adjacency_times(p.x);
}

}  // namespace bsqn
