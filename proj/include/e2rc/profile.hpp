#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "e2rc/bit_matrix.hpp"

namespace e2rc {

enum class Regime { full, low_rate };

// Shape of the nonsystematic (parity) part of a code: how many degree-2
// parity columns exist and how they split into recovery blocks. Columns in
// block k become decodable after exactly k rounds of erasure recovery once
// every unpunctured bit is known.
struct E2rcProfile {
    std::size_t parity_count = 0;    // rows of the parity part (M)
    std::size_t message_count = 0;   // systematic columns (K)
    std::size_t degree2_count = 0;   // degree-2 parity columns
    Regime regime = Regime::full;
    std::size_t depth = 0;                  // number of recovery blocks
    std::vector<std::size_t> block_cols;    // block_cols[k-1] = columns in block k
    std::vector<std::size_t> block_start;   // running sums; block_start[k] = cols in blocks 1..k
    std::size_t last_row_degree = 0;        // full regime only
    std::size_t deep_row_span = 0;          // low-rate only: row offset used by the deepest block

    std::size_t codeword_length() const { return message_count + parity_count; }
    std::size_t window_size() const { return block_cols.empty() ? 0 : block_cols.front(); }
    // Parity columns that need degree >= 3 fill (always 0 in the full regime).
    std::size_t high_degree_parity_count() const {
        return regime == Regime::full ? 0 : parity_count - degree2_count;
    }
};

// Derives the block layout for a parity part with `parity_count` rows of
// which `degree2_count` columns are degree 2. Block sizes halve the parity
// count down: each block takes floor(remaining / 2) columns until, in the
// full regime (degree2_count == parity_count - 1), exactly one column is
// left for the final degree-1 position. With fewer degree-2 columns the
// last block is truncated and the leftover columns get high-degree fill.
E2rcProfile compute_profile(std::size_t parity_count, std::size_t degree2_count,
                            std::size_t message_count);

// Row support of column j (0-based) of recovery block k, within the parity
// part's local column indexing. In the full regime k may be depth + 1, which
// names the single degree-1 column.
std::vector<std::size_t> sr_column(const E2rcProfile& profile, std::size_t k, std::size_t j);

// Assembles the square parity part: degree-2 blocks in ascending recovery
// order, each block's columns left to right, preceded (low-rate) by empty
// placeholder columns for the high-degree fill or followed (full regime) by
// the single degree-1 column.
BitMatrix build_parity_part(const E2rcProfile& profile);

struct VerifyReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const {
        for (const auto& item : items)
            if (!item.pass) return false;
        return true;
    }
};

// Structural audit of an arbitrary candidate parity part against a profile:
// column shape, triangularity (full regime), acyclicity of the degree-2
// region, per-column recovery witnesses, and row degree accounting.
VerifyReport verify_parity_part(const BitMatrix& h2, const E2rcProfile& profile);

// Plain key-value serialization (M, K, nv2, regime, d, gamma, zeta or
// delta_span). Round-trips exactly.
std::string format_profile(const E2rcProfile& profile);
E2rcProfile parse_profile(const std::string& text);

}  // namespace e2rc
