#pragma once

// Shared fixtures and independent reference implementations ("oracles") used
// to pin expected values. Oracles are deliberately naive and share no code
// with the library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "e2rc/bit_matrix.hpp"

namespace oracle {

// Parity part fixture for 7 parity rows: three recovery blocks of sizes
// 3, 2, 1 plus the final degree-1 column.
inline e2rc::BitMatrix parity7() {
    return e2rc::BitMatrix::from_columns(
        7, {{0, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}, {6}});
}

// Parity part fixture for 8 parity rows: blocks of sizes 4, 2, 1 plus the
// degree-1 column.
inline e2rc::BitMatrix parity8() {
    return e2rc::BitMatrix::from_columns(
        8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {4, 6}, {5, 7}, {6, 7}, {7}});
}

inline std::vector<std::vector<std::uint8_t>> to_dense(const e2rc::BitMatrix& m) {
    std::vector<std::vector<std::uint8_t>> dense(m.rows(),
                                                 std::vector<std::uint8_t>(m.cols(), 0));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r : m.col(c)) dense[r][c] = 1;
    return dense;
}

inline std::vector<std::uint8_t> dense_mod2_product(
    const std::vector<std::vector<std::uint8_t>>& dense,
    const std::vector<std::uint8_t>& v) {
    std::vector<std::uint8_t> out(dense.size(), 0);
    for (std::size_t r = 0; r < dense.size(); ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < v.size(); ++c) acc ^= dense[r][c] & v[c] & 1u;
        out[r] = static_cast<std::uint8_t>(acc);
    }
    return out;
}

// Depth-first cycle search over the bipartite graph of the selected columns
// against all rows. Vertex ids: columns as-is, rows offset by cols().
inline bool dfs_has_cycle(const e2rc::BitMatrix& m, const std::vector<std::size_t>& cols) {
    std::size_t n = m.cols() + m.rows();
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<char> selected(m.cols(), 0);
    for (std::size_t c : cols) selected[c] = 1;
    for (std::size_t c : cols)
        for (std::size_t r : m.col(c)) {
            adj[c].push_back(m.cols() + r);
            adj[m.cols() + r].push_back(c);
        }
    std::vector<char> seen(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start] || adj[start].empty()) continue;
        // parent-tracking DFS; meeting a seen vertex that is not the parent
        // closes a cycle
        std::vector<std::pair<std::size_t, std::size_t>> stack{{start, SIZE_MAX}};
        while (!stack.empty()) {
            auto [v, parent] = stack.back();
            stack.pop_back();
            if (seen[v]) return true;
            seen[v] = 1;
            for (std::size_t w : adj[v]) {
                if (w == parent) continue;
                if (seen[w]) return true;
                stack.push_back({w, v});
            }
        }
    }
    return false;
}

// All unordered column pairs sharing at least two rows.
inline std::vector<std::pair<std::size_t, std::size_t>> brute_four_cycles(
    const e2rc::BitMatrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m.cols(); ++a)
        for (std::size_t b = a + 1; b < m.cols(); ++b) {
            std::size_t shared = 0;
            for (std::size_t r : m.col(a)) shared += m.at(r, b) ? 1 : 0;
            if (shared >= 2) pairs.push_back({a, b});
        }
    return pairs;
}

// Synchronous erasure recovery by direct simulation: round k recovers every
// erased bit that is the unique erased neighbor of some check. Returns the
// recovery round per bit, 0 for known bits, SIZE_MAX for never recovered.
inline std::vector<std::size_t> erasure_rounds(const e2rc::BitMatrix& m,
                                               const std::vector<char>& erased) {
    std::vector<std::size_t> round(m.cols(), SIZE_MAX);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!erased[c]) round[c] = 0;
    for (std::size_t k = 1;; ++k) {
        std::vector<std::size_t> hit;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::size_t unknown = SIZE_MAX, count = 0;
            for (std::size_t c : m.row(r))
                if (round[c] == SIZE_MAX || round[c] >= k) {
                    unknown = c;
                    ++count;
                }
            if (count == 1 && round[unknown] == SIZE_MAX) hit.push_back(unknown);
        }
        if (hit.empty()) return round;
        for (std::size_t c : hit) round[c] = k;
    }
}

inline e2rc::BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                     double density) {
    e2rc::BitMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) < density) m.add_entry(r, c);
    return m;
}

}  // namespace oracle
